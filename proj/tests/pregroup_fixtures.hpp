// Hand-built pregroups shared by the tests. Each table is written out from
// its defining arithmetic, independently of the library's constructors.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "cycrw/pregroup.hpp"

namespace fixtures {

using namespace cycrw;
using Products = std::vector<std::tuple<std::string, std::string, std::string>>;

/// Full table of a finite group given by names and a product on indices.
inline Pregroup group_pregroup(const std::vector<std::string>& names, const std::function<std::size_t(std::size_t, std::size_t)>& mul) {
    Products prods;
    std::vector<std::pair<std::string, std::string>> inv;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < names.size(); ++j) {
            const std::size_t k = mul(i, j);
            prods.emplace_back(names[i], names[j], names[k]);
            if (k == 0 && i <= j) inv.emplace_back(names[i], names[j]);
        }
    return Pregroup::from_entries(names, names[0], inv, prods);
}

inline Pregroup cyclic_group(std::size_t n) {
    std::vector<std::string> names{"e"};
    for (std::size_t i = 1; i < n; ++i) names.push_back("g" + std::to_string(i));
    return group_pregroup(names, [n](std::size_t i, std::size_t j) { return (i + j) % n; });
}

inline Pregroup s3() {
    using Perm = std::array<int, 3>;
    const std::vector<Perm> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> names{"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    return group_pregroup(names, [&](std::size_t i, std::size_t j) {
        Perm r{};
        for (int x = 0; x < 3; ++x) r[x] = perms[i][perms[j][x]];
        for (std::size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == r) return k;
        return std::size_t{0};
    });
}

/// {e, a, b} with aa = bb = e; the universal group is infinite dihedral.
inline Pregroup dinf() {
    return Pregroup::from_entries({"e", "a", "b"}, "e", {}, {{"a", "a", "e"}, {"b", "b", "e"}});
}

/// {e, a, A}: the free group on one generator.
inline Pregroup free_rank_one() {
    return Pregroup::from_entries({"e", "a", "A"}, "e", {{"a", "A"}}, {{"a", "A", "e"}, {"A", "a", "e"}});
}

/// Z4 = <x> and Z6 = <y> glued along x^2 = y^3 = h. Elements are e, h, the
/// two remaining elements of Z4 and the four remaining elements of Z6.
struct Amalgam {
    Pregroup P;
    std::vector<std::string> left;   // Z4 minus the shared subgroup
    std::vector<std::string> right;  // Z6 minus the shared subgroup
};

inline Amalgam amalgam_z4_z6() {
    const std::vector<std::string> z4{"e", "x", "h", "x3"};
    const std::vector<std::string> z6{"e", "y", "y2", "h", "y4", "y5"};
    Products prods;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) prods.emplace_back(z4[i], z4[j], z4[(i + j) % 4]);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) prods.emplace_back(z6[i], z6[j], z6[(i + j) % 6]);
    auto P = Pregroup::from_entries({"e", "h", "x", "x3", "y", "y2", "y4", "y5"}, "e",
                                    {{"x", "x3"}, {"y", "y5"}, {"y2", "y4"}}, prods);
    return {P, {"x", "x3"}, {"y", "y2", "y4", "y5"}};
}

}  // namespace fixtures
