#include "csl/configuration_space.hpp"

#include <array>

#include "csl/error.hpp"

namespace csl {

namespace {
struct BinomialTable {
    std::array<std::array<std::uint64_t, 65>, 65> c{};
    BinomialTable() {
        for (int n = 0; n <= 64; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};
const BinomialTable &table() {
    static const BinomialTable t;
    return t;
}
} // namespace

std::uint64_t binomial(int n, int k) noexcept {
    if (n < 0 || k < 0 || k > n || n > 64)
        return 0;
    return table().c[n][k];
}

std::uint64_t colex_rank(std::uint64_t mask) noexcept {
    const auto &c = table().c;
    std::uint64_t r = 0;
    int k = 1;
    for (auto m = mask; m != 0; m &= m - 1, ++k) {
        const int p = std::countr_zero(m);
        if (p >= k)
            r += c[p][k];
    }
    return r;
}

ConfigurationSpace::ConfigurationSpace(int sites, int ups) : sites_(sites), ups_(ups) {
    if (sites < 1 || sites > 63 || ups < 0 || ups > sites)
        fail(ErrorKind::invalid_argument, "configuration space needs 1..63 sites");
    masks_.reserve(binomial(sites, ups));
    if (ups == 0) {
        masks_.push_back(0);
        return;
    }
    const std::uint64_t last = ((std::uint64_t{1} << ups) - 1) << (sites - ups);
    for (std::uint64_t v = (std::uint64_t{1} << ups) - 1;; v = next_combination(v)) {
        masks_.push_back(v);
        if (v == last)
            break;
    }
}

} // namespace csl
