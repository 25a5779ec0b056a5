#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gtcf::groups {

// Finite group given by labeled elements and a full multiplication table.
// Element 0 is the identity (index 1 in the external one-based format).
class FiniteGroup {
public:
    // Full validation: identity at the front, Latin square rows and columns,
    // associativity over all triples, inverses present. Errors name the first
    // offending entry or triple.
    static FiniteGroup validate(std::vector<std::string> elems,
                                std::vector<std::vector<uint32_t>> table);

    static FiniteGroup cyclic(unsigned n, const std::vector<std::string>& names);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                      const std::vector<std::string>& names);

    size_t size() const { return elems_.size(); }
    const std::vector<std::string>& elems() const { return elems_; }
    const std::string& name(uint32_t i) const { return elems_.at(i); }
    int index_of(const std::string& name) const;

    uint32_t mul(uint32_t a, uint32_t b) const { return table_[a][b]; }
    uint32_t inv(uint32_t a) const { return inverse_[a]; }
    unsigned order_of(uint32_t a) const;

    // Checks phi (given on all elements) is an injective homomorphism into
    // `target`; used to validate edge-group injections.
    bool is_injective_hom(const FiniteGroup& target, const std::vector<uint32_t>& phi,
                          std::string* why = nullptr) const;

    bool operator==(const FiniteGroup& o) const {
        return elems_ == o.elems_ && table_ == o.table_;
    }

private:
    FiniteGroup() = default;

    std::vector<std::string> elems_;
    std::vector<std::vector<uint32_t>> table_;
    std::vector<uint32_t> inverse_;
};

} // namespace gtcf::groups
