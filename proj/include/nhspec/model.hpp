#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhspec {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An unperturbed level: complex energy eps = e + (i/2)*gamma.
/// gamma is signed: gamma <= 0 for loss (decay), gamma > 0 for gain.
struct Level {
    double e = 0.0;
    double gamma = 0.0;

    Complex eps() const { return {e, 0.5 * gamma}; }
};

struct LevelSet {
    std::vector<Level> levels;

    explicit LevelSet(std::vector<Level> ls) : levels(std::move(ls)) {
        if (levels.size() < 2)
            throw DimensionError("LevelSet requires at least 2 levels");
        for (const auto& l : levels)
            if (!is_finite(l.e) || !is_finite(l.gamma))
                throw DomainError("LevelSet: non-finite level parameters");
    }

    std::size_t size() const { return levels.size(); }
};

struct Coupling {
    Complex omega{0.0, 0.0};
    bool gaussian_modulated = false;
};

/// One decay channel: real amplitudes v and overall strength alpha >= 0.
struct ChannelVector {
    std::vector<double> v;
    double alpha = 0.0;

    ChannelVector(std::vector<double> amplitudes, double strength)
        : v(std::move(amplitudes)), alpha(strength) {
        if (alpha < 0.0) throw DomainError("ChannelVector: alpha must be >= 0");
        bool any = false;
        for (double x : v) {
            if (!is_finite(x)) throw DomainError("ChannelVector: non-finite amplitude");
            if (x != 0.0) any = true;
        }
        if (!any) throw DomainError("ChannelVector: all amplitudes are zero");
    }
};

/// Complex-symmetric N x N matrix (plain transpose symmetry, no conjugation)
/// plus the diagonal of the underlying H0 that defines the mixing basis.
class ModelMatrix {
  public:
    ModelMatrix(std::size_t n, std::vector<Complex> entries, std::vector<Complex> h0_diag)
        : n_(n), entries_(std::move(entries)), h0_diagonal_(std::move(h0_diag)) {
        if (entries_.size() != n_ * n_ || h0_diagonal_.size() != n_)
            throw DimensionError("ModelMatrix: inconsistent sizes");
        for (const auto& z : entries_)
            if (!is_finite(z)) throw DomainError("ModelMatrix: non-finite entry");
    }

    std::size_t size() const { return n_; }
    const Complex& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<Complex>& entries() const { return entries_; }
    const std::vector<Complex>& h0_diagonal() const { return h0_diagonal_; }

    Complex trace() const {
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

  private:
    std::size_t n_;
    std::vector<Complex> entries_;    // row-major
    std::vector<Complex> h0_diagonal_;
};

}  // namespace nhspec
