#pragma once

// A^x as an abstract abelian group: a presentation plus coordinates of every
// unit in terms of chosen generators.

#include "rbw/abelian.hpp"
#include "rbw/ring.hpp"

namespace rbw {

struct UnitGroupStructure {
    AbPresentation group;
    std::vector<Elem> generators;
    std::vector<std::vector<std::int64_t>> coords;  // indexed by UnitData::unit_index

    const std::vector<std::int64_t>& of(const UnitData& u, Elem a) const { return coords[static_cast<std::size_t>(u.unit_index[a])]; }

    SparseRow row(const UnitData& u, Elem a) const {
        SparseRow r;
        const auto& c = of(u, a);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) r.emplace_back(static_cast<std::uint32_t>(i), Integer(static_cast<long>(c[i])));
        return r;
    }
};

/// Greedy generation: repeatedly adjoin a unit of maximal order outside the
/// current subgroup H (least encoding on ties) with the relation m*e = coords(g^m),
/// m minimal with g^m in H.
inline UnitGroupStructure unit_group_structure(const Ring& R) {
    const UnitData& u = R.units();
    const std::size_t N = u.units.size();
    std::vector<std::uint64_t> order(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        Elem x = u.units[i], cur = x;
        std::uint64_t k = 1;
        while (cur != R.one()) {
            cur = R.mul(cur, x);
            ++k;
        }
        order[i] = k;
    }
    UnitGroupStructure s;
    std::vector<char> in_h(N, 0);
    std::vector<std::vector<std::int64_t>> coord(N);
    std::vector<std::size_t> members;
    const std::size_t one_idx = static_cast<std::size_t>(u.unit_index[R.one()]);
    in_h[one_idx] = 1;
    members.push_back(one_idx);
    std::vector<SparseRow> rels;
    while (members.size() < N) {
        std::size_t pick = N;
        for (std::size_t i = 0; i < N; ++i)
            if (!in_h[i] && (pick == N || order[i] > order[pick])) pick = i;
        const Elem g = u.units[pick];
        const std::size_t gen = s.generators.size();
        s.generators.push_back(g);
        for (auto& c : coord) c.resize(gen + 1, 0);
        std::uint64_t m = 1;
        Elem gm = g;
        while (!in_h[static_cast<std::size_t>(u.unit_index[gm])]) {
            gm = R.mul(gm, g);
            ++m;
        }
        std::vector<std::pair<std::uint32_t, Integer>> rel{{static_cast<std::uint32_t>(gen), Integer(static_cast<unsigned long>(m))}};
        const auto& back = coord[static_cast<std::size_t>(u.unit_index[gm])];
        for (std::size_t i = 0; i < gen; ++i)
            if (back[i] != 0) rel.emplace_back(static_cast<std::uint32_t>(i), Integer(static_cast<long>(-back[i])));
        rels.push_back(make_row(std::move(rel)));
        std::vector<std::size_t> old = members;
        Elem gi = g;
        for (std::uint64_t i = 1; i < m; ++i) {
            for (std::size_t h : old) {
                std::size_t idx = static_cast<std::size_t>(u.unit_index[R.mul(u.units[h], gi)]);
                coord[idx] = coord[h];
                coord[idx][gen] = static_cast<std::int64_t>(i);
                in_h[idx] = 1;
                members.push_back(idx);
            }
            gi = R.mul(gi, g);
        }
    }
    for (auto& c : coord) c.resize(s.generators.size(), 0);
    s.group = AbPresentation(s.generators.size(), std::move(rels));
    s.coords = std::move(coord);
    return s;
}

}  // namespace rbw
