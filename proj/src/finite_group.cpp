#include "gtcf/finite_group.hpp"

#include "gtcf/errors.hpp"

#include <map>

namespace gtcf::groups {

FiniteGroup FiniteGroup::validate(std::vector<std::string> elems,
                                  std::vector<std::vector<uint32_t>> table) {
    size_t n = elems.size();
    if (n == 0) throw ValidationError("finite group needs at least the identity element");
    if (table.size() != n)
        throw ValidationError("multiplication table has " + std::to_string(table.size()) +
                              " rows, expected " + std::to_string(n));
    for (size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw ValidationError("row " + std::to_string(i + 1) + " of the table has " +
                                  std::to_string(table[i].size()) + " entries, expected " +
                                  std::to_string(n));
        for (size_t j = 0; j < n; ++j)
            if (table[i][j] >= n)
                throw ValidationError("table entry (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") is out of range");
    }
    for (size_t i = 0; i < n; ++i) {
        if (table[0][i] != i)
            throw ValidationError("element at index 1 is not a left identity at column " +
                                  std::to_string(i + 1));
        if (table[i][0] != i)
            throw ValidationError("element at index 1 is not a right identity at row " +
                                  std::to_string(i + 1));
    }
    // Latin square property (cancellation).
    for (size_t i = 0; i < n; ++i) {
        std::vector<bool> row(n, false), col(n, false);
        for (size_t j = 0; j < n; ++j) {
            if (row[table[i][j]])
                throw ValidationError("row " + std::to_string(i + 1) + " repeats element index " +
                                      std::to_string(table[i][j] + 1));
            if (col[table[j][i]])
                throw ValidationError("column " + std::to_string(i + 1) +
                                      " repeats element index " + std::to_string(table[j][i] + 1));
            row[table[i][j]] = true;
            col[table[j][i]] = true;
        }
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw ValidationError(
                        "associativity fails at triple (" + elems[a] + "," + elems[b] + "," +
                        elems[c] + ")");
    std::vector<uint32_t> inverse(n, 0);
    for (size_t a = 0; a < n; ++a) {
        bool found = false;
        for (size_t b = 0; b < n && !found; ++b)
            if (table[a][b] == 0 && table[b][a] == 0) {
                inverse[a] = static_cast<uint32_t>(b);
                found = true;
            }
        if (!found) throw ValidationError("element '" + elems[a] + "' has no inverse");
    }
    std::map<std::string, int> seen;
    for (size_t i = 0; i < n; ++i) {
        if (elems[i].empty()) throw ValidationError("empty element label");
        if (!seen.emplace(elems[i], 1).second)
            throw ValidationError("duplicate element label '" + elems[i] + "'");
    }
    FiniteGroup g;
    g.elems_ = std::move(elems);
    g.table_ = std::move(table);
    g.inverse_ = std::move(inverse);
    return g;
}

FiniteGroup FiniteGroup::cyclic(unsigned n, const std::vector<std::string>& names) {
    if (names.size() != n) throw ValidationError("cyclic group needs exactly n names");
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    return validate(names, std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                        const std::vector<std::string>& names) {
    size_t n = a.size() * b.size();
    if (names.size() != n) throw ValidationError("direct product needs |A|*|B| names");
    auto idx = [&](uint32_t i, uint32_t j) { return i * b.size() + j; };
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    for (uint32_t i1 = 0; i1 < a.size(); ++i1)
        for (uint32_t j1 = 0; j1 < b.size(); ++j1)
            for (uint32_t i2 = 0; i2 < a.size(); ++i2)
                for (uint32_t j2 = 0; j2 < b.size(); ++j2)
                    table[idx(i1, j1)][idx(i2, j2)] =
                        static_cast<uint32_t>(idx(a.mul(i1, i2), b.mul(j1, j2)));
    return validate(names, std::move(table));
}

int FiniteGroup::index_of(const std::string& name) const {
    for (size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] == name) return static_cast<int>(i);
    return -1;
}

unsigned FiniteGroup::order_of(uint32_t a) const {
    unsigned n = 1;
    uint32_t x = a;
    while (x != 0) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_injective_hom(const FiniteGroup& target, const std::vector<uint32_t>& phi,
                                   std::string* why) const {
    if (phi.size() != size()) {
        if (why) *why = "map is not defined on every element";
        return false;
    }
    for (auto v : phi)
        if (v >= target.size()) {
            if (why) *why = "image index out of range";
            return false;
        }
    for (uint32_t a = 0; a < size(); ++a)
        for (uint32_t b = 0; b < size(); ++b)
            if (phi[mul(a, b)] != target.mul(phi[a], phi[b])) {
                if (why)
                    *why = "not a homomorphism at (" + name(a) + "," + name(b) + ")";
                return false;
            }
    for (uint32_t a = 0; a < size(); ++a)
        for (uint32_t b = a + 1; b < size(); ++b)
            if (phi[a] == phi[b]) {
                if (why) *why = "not injective: '" + name(a) + "' and '" + name(b) + "' collide";
                return false;
            }
    return true;
}

} // namespace gtcf::groups
