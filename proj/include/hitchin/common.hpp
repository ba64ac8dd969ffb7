#ifndef HITCHIN_COMMON_HPP
#define HITCHIN_COMMON_HPP

#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

namespace hitchin {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

// Parallelism cap, read once from HITCHIN_CUBIC_THREADS (default 1:
// strictly sequential, bitwise-deterministic results).
inline int max_threads() {
    static int n = [] {
        const char* s = std::getenv("HITCHIN_CUBIC_THREADS");
        if (!s) return 1;
        int v = std::atoi(s);
        return v > 0 ? v : 1;
    }();
    return n;
}

}  // namespace hitchin

#endif
