#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace schrodls {

/// Kernel families for the warped-phase convection system.
///
/// A kernel is a pair (eta, zeta) with zeta = Fourier transform of eta.
/// zeta(p) becomes the initial profile in the auxiliary dimension; eta(k)
/// appears only in the brute-force double-integral oracle.
enum class KernelVariant {
    FourierOdd,      ///< zeta(p) = p exp(-p^2/2), odd; admissible for any invertible Hermitian matrix
    Gaussian,        ///< zeta(p) = sqrt(2/pi) exp(-p^2/2), even; requires a positive definite spectrum
    ExponentialAbs,  ///< zeta(p) = exp(-|p|), continuous only; requires a positive definite spectrum
};

struct KernelSpec {
    KernelVariant variant = KernelVariant::FourierOdd;

    /// True when the inverse identity int_0^inf zeta(lambda s) ds = 1/lambda
    /// only holds for lambda > 0.
    bool requires_positive_spectrum() const {
        return variant != KernelVariant::FourierOdd;
    }

    /// eta(k) is only available for the smooth variants.
    bool has_eta() const { return variant != KernelVariant::ExponentialAbs; }

    /// +1 for even zeta, -1 for odd.
    int parity() const { return variant == KernelVariant::FourierOdd ? -1 : +1; }

    /// Token used in configs and on the command line:
    /// "fourier-odd" | "gaussian" | "exp-abs".
    static KernelSpec from_token(std::string_view token);
    std::string token() const;
};

/// zeta(p), the initial profile of the convection system.
/// Throws std::domain_error for non-finite p.
double kernel_zeta(const KernelSpec& spec, double p);

/// i-th derivative of zeta. Smooth variants use the Hermite-polynomial
/// recurrence; ExponentialAbs supports i = 0 only.
double kernel_zeta_derivative(const KernelSpec& spec, int order, double p);

/// eta(k), the weight of the Hamiltonian-simulation integral.
/// Unsupported for ExponentialAbs.
std::complex<double> kernel_eta(const KernelSpec& spec, double k);

/// Smallest r >= 0 such that |zeta^(i)(x)| <= delta for all |x| >= r and all
/// 0 <= i <= max(m-1, 0). Certified by bisection on the monotone tail of the
/// Hermite envelope; ExponentialAbs (m <= 1 only) solves exactly.
double kernel_tail_radius(const KernelSpec& spec, int m, double delta);

/// Sobolev-type seminorm |zeta|_m = (int_a^b |zeta^(m)|^2 dp)^(1/2), adaptive
/// quadrature with relative tolerance 1e-10. ExponentialAbs supports m = 0 only.
double kernel_seminorm(const KernelSpec& spec, int m, double a, double b);

}  // namespace schrodls
