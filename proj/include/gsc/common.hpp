#ifndef gsc_common_hpp
#define gsc_common_hpp

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsc {

// Error with a stable machine-readable code ("NotConnected", "AxiomViolated", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Extended real for quantities that are legitimately +infinity (r(z) on complete
// graphs, entropies with support mismatch). Never a float sentinel.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal inf() { return {0.0, true}; }
    static ExtReal finite(double v) { return {v, false}; }
    bool operator<(const ExtReal& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
};

inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }

// Round to `digits` significant digits; used so repeated runs emit identical JSON.
inline double round_sig(double x, int digits = 12) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    double mag = std::pow(10.0, digits - 1 - (int)std::floor(std::log10(std::fabs(x))));
    return std::round(x * mag) / mag;
}

// Deterministic generator (splitmix-seeded xoshiro256**). Distributions are
// hand-rolled so outputs do not depend on the standard library implementation.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : st_) {
            s += 0x9E3779B97F4A7C15ull;
            uint64_t z = s;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            w = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        uint64_t result = rotl(st_[1] * 5, 7) * 9;
        uint64_t t = st_[1] << 17;
        st_[2] ^= st_[0];
        st_[3] ^= st_[1];
        st_[1] ^= st_[2];
        st_[0] ^= st_[3];
        st_[2] ^= t;
        st_[3] = rotl(st_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double u01() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * u01(); }
    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
    double exponential() { return -std::log(1.0 - u01()); }
    // Box-Muller
    double normal() {
        double u = 1.0 - u01(), v = u01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }

    // Dirichlet(1,...,1): normalized exponentials.
    std::vector<double> dirichlet(int n) {
        std::vector<double> x(n);
        double s = 0;
        for (auto& v : x) {
            v = exponential();
            s += v;
        }
        for (auto& v : x) v /= s;
        return x;
    }

private:
    uint64_t st_[4];
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace gsc

#endif
