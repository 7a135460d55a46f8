#include "schrodls/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "schrodls/errors.hpp"

namespace schrodls {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Header {
    bool coordinate = true;
    enum class Field { Real, Complex, Integer, Pattern } field = Field::Real;
    enum class Symmetry { General, Symmetric, Skew, Hermitian } symmetry = Symmetry::General;
};

bool next_data_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

}  // namespace

Eigen::MatrixXcd read_matrix_market(std::istream& in) {
    long lineno = 0;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream", 1);
    ++lineno;

    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    if (lower(object) != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);

    Header h;
    const std::string fmt = lower(format);
    if (fmt == "coordinate")
        h.coordinate = true;
    else if (fmt == "array")
        h.coordinate = false;
    else
        throw ParseError("unsupported format '" + format + "'", lineno);

    const std::string fld = lower(field);
    if (fld == "real")
        h.field = Header::Field::Real;
    else if (fld == "complex")
        h.field = Header::Field::Complex;
    else if (fld == "integer")
        h.field = Header::Field::Integer;
    else if (fld == "pattern")
        h.field = Header::Field::Pattern;
    else
        throw ParseError("unsupported field '" + field + "'", lineno);

    const std::string sym = lower(symmetry);
    if (sym == "general")
        h.symmetry = Header::Symmetry::General;
    else if (sym == "symmetric")
        h.symmetry = Header::Symmetry::Symmetric;
    else if (sym == "skew-symmetric")
        h.symmetry = Header::Symmetry::Skew;
    else if (sym == "hermitian")
        h.symmetry = Header::Symmetry::Hermitian;
    else
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);

    if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno + 1);
    std::istringstream size_line(line);
    long rows = 0, cols = 0, nnz = 0;
    if (h.coordinate) {
        if (!(size_line >> rows >> cols >> nnz))
            throw ParseError("malformed coordinate size line", lineno);
    } else {
        if (!(size_line >> rows >> cols)) throw ParseError("malformed array size line", lineno);
    }
    if (rows <= 0 || cols <= 0) throw ParseError("non-positive matrix dimensions", lineno);
    if (rows > 1 << 15 || cols > 1 << 15) throw ParseError("matrix too large for dense read", lineno);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);

    auto read_value = [&](std::istringstream& s) -> std::complex<double> {
        switch (h.field) {
            case Header::Field::Pattern:
                return {1.0, 0.0};
            case Header::Field::Complex: {
                double re = 0.0, im = 0.0;
                if (!(s >> re >> im)) throw ParseError("malformed complex entry", lineno);
                return {re, im};
            }
            default: {
                double re = 0.0;
                if (!(s >> re)) throw ParseError("malformed numeric entry", lineno);
                return {re, 0.0};
            }
        }
    };

    auto place = [&](long i, long j, std::complex<double> v) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw ParseError("index out of bounds", lineno);
        m(i, j) = v;
        if (i != j) {
            switch (h.symmetry) {
                case Header::Symmetry::Symmetric: m(j, i) = v; break;
                case Header::Symmetry::Skew: m(j, i) = -v; break;
                case Header::Symmetry::Hermitian: m(j, i) = std::conj(v); break;
                case Header::Symmetry::General: break;
            }
        }
    };

    if (h.coordinate) {
        for (long e = 0; e < nnz; ++e) {
            if (!next_data_line(in, line, lineno))
                throw ParseError("unexpected end of file: expected " + std::to_string(nnz) +
                                     " entries, got " + std::to_string(e),
                                 lineno + 1);
            std::istringstream s(line);
            long i = 0, j = 0;
            if (!(s >> i >> j)) throw ParseError("malformed coordinate entry", lineno);
            place(i - 1, j - 1, read_value(s));
        }
    } else {
        const bool lower_only = h.symmetry != Header::Symmetry::General;
        for (long j = 0; j < cols; ++j) {
            for (long i = lower_only ? j : 0; i < rows; ++i) {
                if (!next_data_line(in, line, lineno))
                    throw ParseError("unexpected end of file in array data", lineno + 1);
                std::istringstream s(line);
                place(i, j, read_value(s));
            }
        }
    }
    return m;
}

Eigen::MatrixXcd read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file '" + path + "'");
    return read_matrix_market(in);
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXcd& m) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    const bool complex_field = m.imag().cwiseAbs().maxCoeff() != 0.0;
    out << "%%MatrixMarket matrix array " << (complex_field ? "complex" : "real")
        << " general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[96];
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (complex_field)
                std::snprintf(buf, sizeof buf, "%.17g %.17g\n", m(i, j).real(), m(i, j).imag());
            else
                std::snprintf(buf, sizeof buf, "%.17g\n", m(i, j).real());
            out << buf;
        }
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m) {
    write_matrix_market(path, Eigen::MatrixXcd(m.cast<std::complex<double>>()));
}

Eigen::VectorXcd read_vector_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vector file '" + path + "'");
    std::vector<double> vals;
    std::string token;
    long lineno = 1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream s(line);
        while (s >> token) {
            try {
                std::size_t used = 0;
                const double v = std::stod(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                vals.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("malformed vector entry '" + token + "'", lineno);
            }
        }
        ++lineno;
    }
    if (vals.empty()) throw ParseError("vector file contains no values", 1);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(vals.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = vals[static_cast<std::size_t>(i)];
    return v;
}

void write_vector_text(const std::string& path, const Eigen::VectorXd& v) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    char buf[48];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v[i]);
        out << buf;
    }
}

}  // namespace schrodls
