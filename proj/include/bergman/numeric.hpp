#pragma once

// Small numerical kernels shared across the library: error-free transforms,
// compensated summation, and accurate evaluation of 1 - <z,w> near the
// boundary of the domain, where naive subtraction loses all relative
// accuracy.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;
using PointView = std::span<const cplx>;

// -------------------------------------------------------------------------
// error-free transforms

// TwoProd: a*b = p + e exactly, with p = fl(a*b).
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

// Neumaier's improved Kahan summation.  Accumulates values with a running
// compensation term; final value is sum + comp.
class NeumaierSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// -------------------------------------------------------------------------
// compensated boundary-sensitive quantities

// 1 - sum_i z_i * conj(w_i), computed so that the *relative* error stays at
// machine-epsilon level even when the result is ~1e-12.  All the partial
// products and their fma error terms are pushed through one compensated sum
// together with the leading 1.
inline cplx one_minus_inner(PointView z, PointView w) {
    NeumaierSum re, im;
    re.add(1.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = z[i].real(), b = z[i].imag();
        const double c = w[i].real(), d = w[i].imag();
        double p, e;
        // Re(z_i conj(w_i)) = a*c + b*d ; Im = b*c - a*d
        two_prod(a, c, p, e); re.add(-p); re.add(-e);
        two_prod(b, d, p, e); re.add(-p); re.add(-e);
        two_prod(b, c, p, e); im.add(-p); im.add(-e);
        two_prod(a, d, p, e); im.add(p);  im.add(e);
    }
    return {re.value(), im.value()};
}

// 1 - ||z||^2 with the same compensation (real, and exact sign).
inline double one_minus_sqnorm(PointView z) {
    NeumaierSum re;
    re.add(1.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = z[i].real(), b = z[i].imag();
        double p, e;
        two_prod(a, a, p, e); re.add(-p); re.add(-e);
        two_prod(b, b, p, e); re.add(-p); re.add(-e);
    }
    return re.value();
}

// plain inner product <z,w> = sum z_i conj(w_i)
inline cplx inner(PointView z, PointView w) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

inline double sqnorm(PointView z) {
    double s = 0.0;
    for (const cplx& c : z) s += std::norm(c);
    return s;
}

// integer power by squaring (complex base)
inline cplx ipow(cplx b, unsigned k) {
    cplx r = 1.0;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// z^s for real s, branch cut on the negative real axis; fast path for
// integer exponents (the common case n+1, p(n+1), ...).
inline cplx cpow(cplx z, double s) {
    double si;
    if (std::modf(s, &si) == 0.0 && si >= 0.0 && si <= 64.0)
        return ipow(z, static_cast<unsigned>(si));
    return std::pow(z, s);
}

}  // namespace bergman
