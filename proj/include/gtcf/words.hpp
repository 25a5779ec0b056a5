#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gtcf::groups {

// One letter occurrence in a word; exp is +1 or -1.
struct WLetter {
    uint32_t id;
    int8_t exp;

    bool operator==(const WLetter& o) const { return id == o.id && exp == o.exp; }
    auto operator<=>(const WLetter& o) const = default;
};

using Word = std::vector<WLetter>;

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);

// Shortlex comparison used for deterministic representative selection.
bool word_shortlex_less(const Word& a, const Word& b);

// Named alphabet shared by the words of one marked group.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    size_t size() const { return names_.size(); }
    const std::string& name(uint32_t id) const { return names_.at(id); }
    const std::vector<std::string>& names() const { return names_; }
    // -1 when the name is unknown.
    int id_of(const std::string& name) const;

    // "t*beta'^-1", with "1" for the empty word. Exponent runs are folded
    // ("sigma^3"); parse_word expands them back.
    std::string render(const Word& w) const;
    Word parse(const std::string& text) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, uint32_t> index_;
};

// Word-problem decision procedure: canonical normal forms, hence equality.
class WordOracle {
public:
    virtual ~WordOracle() = default;

    virtual const Alphabet& alphabet() const = 0;
    // Canonical: u, v represent the same element iff the results are equal.
    virtual Word normal_form(const Word& w) const = 0;
    // Which normal form theorem backs the result, e.g. "finite-table",
    // "free-reduction", "amalgam-normal-form", "britton-reduction".
    virtual std::string certificate() const = 0;

    bool equal(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }
    bool is_identity(const Word& w) const { return normal_form(w).empty(); }
};

using OraclePtr = std::shared_ptr<const WordOracle>;

} // namespace gtcf::groups
