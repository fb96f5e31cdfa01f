#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "pcgroup.hpp"
#include "subgroup.hpp"

namespace nilcert {

/* A subgroup rebuilt as a standalone polycyclic group.
 *
 * The canonical generating sequence of a subgroup has strictly increasing
 * leading indices, so h_i^p lies in <h_{i+1}, ...> and [h_j, h_i] (j > i)
 * lies in <h_{j+1}, ...>: expressing those values in subgroup coordinates
 * yields relation words that satisfy the support restrictions of a
 * polycyclic presentation.  The presentation's own confluence check runs at
 * construction, so the copy is verified consistent independently. */
struct IsomorphicCopy {
    std::shared_ptr<PcGroup> group;
    const PcGroup* parent = nullptr;
    Subgroup sub;             // the subgroup this group was built from
    std::vector<Element> igs; // parent images of the new generators, in order

    IsomorphicCopy(std::shared_ptr<PcGroup> g, const PcGroup* par, Subgroup s,
                   std::vector<Element> gens)
        : group(std::move(g)), parent(par), sub(std::move(s)), igs(std::move(gens)) {}

    Element to_parent(const Element& x) const {
        Element r = parent->identity();
        for (size_t i = 0; i < igs.size(); ++i)
            r = parent->mul(r, parent->pow(igs[i], static_cast<long long>(x.e[i])));
        return r;
    }

    Element from_parent(const Element& x) const {
        std::vector<int> c = sub.coordinates(x);
        Element q{std::vector<uint8_t>(c.size(), 0)};
        for (size_t i = 0; i < c.size(); ++i) q.e[i] = static_cast<uint8_t>(c[i]);
        return q;
    }
};

inline IsomorphicCopy subgroup_to_group(const Subgroup& H) {
    const PcGroup& G = H.group();
    const std::vector<Element> gens = H.igs();
    const int r = static_cast<int>(gens.size());
    require(r > 0, "subgroup_to_group: the trivial subgroup has no polycyclic sequence");

    auto coords_word = [&](const Element& x, int min_index, const char* what) {
        std::vector<int> c = H.coordinates(x);
        std::vector<Letter> w;
        for (int i = 0; i < r; ++i) {
            if (c[static_cast<size_t>(i)] == 0) continue;
            require(i >= min_index, std::string("subgroup_to_group: ") + what +
                                        " violates the expected support restriction");
            w.push_back(Letter{i, c[static_cast<size_t>(i)]});
        }
        return w;
    };

    PcGroup::Relations rel;
    rel.prime = G.prime();
    rel.power.resize(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        rel.power[static_cast<size_t>(i)] =
            coords_word(G.pow(gens[static_cast<size_t>(i)], G.prime()), i + 1, "generator power");
    for (int j = 1; j < r; ++j)
        for (int i = 0; i < j; ++i) {
            std::vector<Letter> w = coords_word(
                G.comm(gens[static_cast<size_t>(j)], gens[static_cast<size_t>(i)]), j + 1,
                "generator commutator");
            if (!w.empty()) rel.comm[{j, i}] = std::move(w);
        }

    return IsomorphicCopy(std::make_shared<PcGroup>(std::move(rel)), &G, H, gens);
}

/* Quotient of a polycyclic group by a normal subgroup.
 *
 * Coset representatives are the elements whose exponents vanish at the
 * kernel's leading indices; the remaining positions ("surviving" generator
 * indices) then carry a polycyclic normal form for the quotient.  Relation
 * words inherit the support restrictions because taking representatives
 * never disturbs positions below the first nonzero one.  The quotient
 * presentation is checked for confluence at construction. */
struct QuotientGroup {
    std::shared_ptr<PcGroup> group;
    const PcGroup* parent = nullptr;
    Subgroup kernel;
    std::vector<int> surviving; // parent generator index of each quotient generator

    QuotientGroup(std::shared_ptr<PcGroup> q, const PcGroup* par, Subgroup ker,
                  std::vector<int> surv)
        : group(std::move(q)), parent(par), kernel(std::move(ker)), surviving(std::move(surv)) {}

    Element project(const Element& x) const {
        Element rep = kernel.coset_rep(x);
        Element q{std::vector<uint8_t>(surviving.size(), 0)};
        for (size_t i = 0; i < surviving.size(); ++i)
            q.e[i] = rep.e[static_cast<size_t>(surviving[i])];
        return q;
    }

    Element lift(const Element& q) const {
        Element x = parent->identity();
        for (size_t i = 0; i < surviving.size(); ++i)
            x.e[static_cast<size_t>(surviving[i])] = q.e[i];
        return x;
    }
};

inline QuotientGroup quotient(const PcGroup& G, const Subgroup& N) {
    require(&N.group() == &G, "quotient: kernel belongs to a different group");
    require(N.is_normal(), "quotient: kernel is not normal");

    std::vector<bool> is_lead(static_cast<size_t>(G.ngens()), false);
    for (int l : N.leading_indices()) is_lead[static_cast<size_t>(l)] = true;
    std::vector<int> surviving;
    for (int i = 0; i < G.ngens(); ++i)
        if (!is_lead[static_cast<size_t>(i)]) surviving.push_back(i);
    const int r = static_cast<int>(surviving.size());
    require(r > 0, "quotient: the quotient by the whole group is trivial");

    std::vector<int> pos(static_cast<size_t>(G.ngens()), -1);
    for (int i = 0; i < r; ++i) pos[static_cast<size_t>(surviving[static_cast<size_t>(i)])] = i;

    auto rep_word = [&](const Element& x, int min_index, const char* what) {
        Element rep = N.coset_rep(x);
        std::vector<Letter> w;
        for (int i = 0; i < G.ngens(); ++i) {
            int e = rep.e[static_cast<size_t>(i)];
            if (e == 0) continue;
            int j = pos[static_cast<size_t>(i)];
            require(j >= 0, "quotient: representative has support at a kernel position");
            require(j >= min_index, std::string("quotient: ") + what +
                                        " violates the expected support restriction");
            w.push_back(Letter{j, e});
        }
        return w;
    };

    PcGroup::Relations rel;
    rel.prime = G.prime();
    rel.power.resize(static_cast<size_t>(r));
    if (!G.names().empty()) {
        for (int i : surviving) rel.names.push_back(G.names()[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < r; ++i) {
        Element g = G.generator(surviving[static_cast<size_t>(i)]);
        rel.power[static_cast<size_t>(i)] = rep_word(G.pow(g, G.prime()), i + 1, "generator power");
    }
    for (int j = 1; j < r; ++j)
        for (int i = 0; i < j; ++i) {
            Element gj = G.generator(surviving[static_cast<size_t>(j)]);
            Element gi = G.generator(surviving[static_cast<size_t>(i)]);
            std::vector<Letter> w = rep_word(G.comm(gj, gi), j + 1, "generator commutator");
            if (!w.empty()) rel.comm[{j, i}] = std::move(w);
        }

    return QuotientGroup(std::make_shared<PcGroup>(std::move(rel)), &G, N, std::move(surviving));
}

} // namespace nilcert
