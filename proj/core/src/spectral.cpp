#include "curveflow/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curveflow::spectral {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<cdouble> modes(const std::vector<cdouble>& g) {
    auto m = fft(g);
    const double inv = 1.0 / static_cast<double>(g.size());
    for (auto& c : m) c *= inv;
    return m;
}

std::vector<cdouble> grid(const std::vector<cdouble>& m) {
    auto g = m;
    const double n = static_cast<double>(m.size());
    for (auto& c : g) c *= n;
    fft_inplace(g, true);
    return g;
}

int wavenumber(std::size_t slot, std::size_t n) {
    return slot < n / 2 ? static_cast<int>(slot)
                        : static_cast<int>(slot) - static_cast<int>(n);
}

std::vector<cdouble> derivative(std::vector<cdouble> m, int order) {
    if (order < 0) throw std::invalid_argument("spectral::derivative: negative order");
    if (order == 0) return m;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        if (order % 2 == 1 && n % 2 == 0 && i == n / 2) {
            m[i] = 0.0;  // Nyquist has no well-defined odd derivative
            continue;
        }
        cdouble factor{1.0, 0.0};
        const cdouble ik{0.0, kTwoPi * k};
        for (int p = 0; p < order; ++p) factor *= ik;
        m[i] *= factor;
    }
    return m;
}

std::vector<cdouble> antiderivative_periodic(std::vector<cdouble> m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        if (k == 0) {
            m[i] = 0.0;
        } else {
            m[i] /= cdouble{0.0, kTwoPi * k};
        }
    }
    return m;
}

cdouble eval(const std::vector<cdouble>& m, double theta) {
    const std::size_t n = m.size();
    const cdouble u{std::cos(kTwoPi * theta), std::sin(kTwoPi * theta)};
    const cdouble uc = std::conj(u);
    // Ascending powers by recurrence; the accumulated roundoff is O(n*eps),
    // well below the interpolation targets at the sizes used here.
    cdouble acc = m[0];
    cdouble up{1.0, 0.0};
    cdouble un{1.0, 0.0};
    for (std::size_t k = 1; k < n / 2; ++k) {
        up *= u;
        un *= uc;
        acc += m[k] * up + m[n - k] * un;
    }
    if (n >= 2) {
        un *= uc;
        acc += m[n / 2] * un;  // k = -n/2 bin
    }
    return acc;
}

std::vector<cdouble> upsample_modes(const std::vector<cdouble>& m, std::size_t n_new) {
    const std::size_t n = m.size();
    if (n_new == n) return m;
    if (n_new < n || !is_power_of_two(n_new))
        throw std::invalid_argument("spectral::upsample_modes: bad target size");
    std::vector<cdouble> out(n_new, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        if (i == n / 2) continue;  // Nyquist handled below
        std::size_t slot = k >= 0 ? static_cast<std::size_t>(k)
                                  : n_new - static_cast<std::size_t>(-k);
        out[slot] = m[i];
    }
    // Split the old Nyquist bin (wavenumber -n/2) symmetrically between the
    // +n/2 and -n/2 slots of the finer series.
    out[n / 2] = 0.5 * m[n / 2];
    out[n_new - n / 2] = 0.5 * m[n / 2];
    return out;
}

std::vector<cdouble> to_complex(const std::vector<double>& re) {
    std::vector<cdouble> z(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) z[i] = {re[i], 0.0};
    return z;
}

std::vector<double> real_part(const std::vector<cdouble>& z) {
    std::vector<double> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = z[i].real();
    return r;
}

}  // namespace curveflow::spectral
