#pragma once

#include <string>
#include <vector>

#include "pcgroup.hpp"

namespace nilcert {

/* Built-in sample groups.  Each entry is a consistent polycyclic
 * presentation; descriptions state the isomorphism type. */
struct CatalogEntry {
    std::string name;
    std::string description;
    PcGroup::Relations relations;
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;

        { // cyclic of order 9: a^3 = b, b^3 = 1
            PcGroup::Relations r;
            r.prime = 3;
            r.names = {"a", "b"};
            r.power.resize(2);
            r.power[0] = {Letter{1, 1}};
            v.push_back({"cyc9", "cyclic group of order 9", std::move(r)});
        }
        { // Z9 x Z3: a^3 = c, b^3 = 1, c^3 = 1, all commuting
            PcGroup::Relations r;
            r.prime = 3;
            r.names = {"a", "b", "c"};
            r.power.resize(3);
            r.power[0] = {Letter{2, 1}};
            v.push_back({"ab_9_3", "abelian group Z9 x Z3", std::move(r)});
        }
        { // Heisenberg group over F3: extraspecial of order 27, exponent 3
            PcGroup::Relations r;
            r.prime = 3;
            r.names = {"a", "b", "c"};
            r.power.resize(3);
            r.comm[{1, 0}] = {Letter{2, 1}};
            v.push_back({"heis3", "Heisenberg group of order 27 and exponent 3", std::move(r)});
        }
        { // <a,b | a^9, b^9, a^b = a^4>: powerful group of order 81, class 2;
          // pc generators a, b, c = a^3, d = b^3.  With [x,y] = x^-1 y^-1 x y,
          // the relation a^b = a^4 gives [b,a] = (a^b)^-1 a = a^-3 = c^2.
            PcGroup::Relations r;
            r.prime = 3;
            r.names = {"a", "b", "c", "d"};
            r.power.resize(4);
            r.power[0] = {Letter{2, 1}};
            r.power[1] = {Letter{3, 1}};
            r.comm[{1, 0}] = {Letter{2, 2}};
            v.push_back({"mc9", "powerful group <a,b | a^9, b^9, a^b = a^4> of order 81", std::move(r)});
        }
        { // modular group of order 16: <a,b | a^8, b^2, a^b = a^5>,
          // pc generators a, b, c = a^2, d = a^4; [b,a] = (a^b)^-1 a = a^-4 = d
            PcGroup::Relations r;
            r.prime = 2;
            r.names = {"a", "b", "c", "d"};
            r.power.resize(4);
            r.power[0] = {Letter{2, 1}};
            r.power[2] = {Letter{3, 1}};
            r.comm[{1, 0}] = {Letter{3, 1}};
            v.push_back({"m16", "modular group <a,b | a^8, b^2, a^b = a^5> of order 16", std::move(r)});
        }
        return v;
    }();
    return entries;
}

inline const CatalogEntry* catalog_find(const std::string& name) {
    for (const CatalogEntry& e : catalog())
        if (e.name == name) return &e;
    return nullptr;
}

inline PcGroup catalog_group(const std::string& name) {
    const CatalogEntry* e = catalog_find(name);
    require(e != nullptr, "unknown catalog group: " + name);
    return PcGroup(e->relations);
}

} // namespace nilcert
