#ifndef HITCHIN_RATIONAL_HPP
#define HITCHIN_RATIONAL_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hitchin {

// Exact rational arithmetic over int64.  Root coordinates and Weyl matrix
// entries for the supported types stay tiny (denominators divide 6), so
// overflow is not a practical concern; normalize() keeps them reduced.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator-() const { return Rat(-num_, den_); }
    Rat operator+(const Rat& o) const {
        return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rat operator-(const Rat& o) const {
        return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }

    bool is_zero() const { return num_ == 0; }
    double to_double() const { return double(num_) / double(den_); }

  private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    std::int64_t num_, den_;
};

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec operator*(const Rat& c, const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

// Dense square rational matrix (row major), just enough for Weyl groups.
struct RatMat {
    int n = 0;
    std::vector<Rat> a;

    RatMat() = default;
    explicit RatMat(int dim) : n(dim), a(size_t(dim) * dim) {}

    Rat& operator()(int i, int j) { return a[size_t(i) * n + j]; }
    const Rat& operator()(int i, int j) const { return a[size_t(i) * n + j]; }

    static RatMat identity(int dim) {
        RatMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = Rat(1);
        return m;
    }

    RatMat operator*(const RatMat& o) const {
        RatMat r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Rat& v = (*this)(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < n; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    RatVec apply(const RatVec& v) const {
        RatVec r(n);
        for (int i = 0; i < n; ++i) {
            Rat s(0);
            for (int j = 0; j < n; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    bool operator==(const RatMat& o) const { return n == o.n && a == o.a; }
};

struct RatMatHash {
    size_t operator()(const RatMat& m) const {
        size_t h = std::hash<int>()(m.n);
        for (const Rat& r : m.a) {
            h ^= std::hash<std::int64_t>()(r.num()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<std::int64_t>()(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace hitchin

#endif
