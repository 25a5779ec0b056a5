#include "gtcf/words.hpp"

#include "gtcf/errors.hpp"

#include <cctype>
#include <sstream>

namespace gtcf::groups {

Word word_inverse(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r.push_back(WLetter{it->id, static_cast<int8_t>(-it->exp)});
    return r;
}

Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

bool word_shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id) return a[i].id < b[i].id;
        if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp; // positive first
    }
    return false;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty() || names_[i] == "1")
            throw ValidationError("invalid letter name at index " + std::to_string(i));
        if (!index_.emplace(names_[i], static_cast<uint32_t>(i)).second)
            throw ValidationError("duplicate letter name '" + names_[i] + "'");
    }
}

int Alphabet::id_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : static_cast<int>(it->second);
}

std::string Alphabet::render(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream out;
    size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!first) out << "*";
        first = false;
        out << name(w[i].id);
        long e = static_cast<long>(w[i].exp) * static_cast<long>(j - i);
        if (e != 1) out << "^" << e;
        i = j;
    }
    return out.str();
}

Word Alphabet::parse(const std::string& text) const {
    Word w;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool expect_letter = true;
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        if (!expect_letter) {
            if (text[pos] != '*')
                throw ValidationError("word parse error at position " + std::to_string(pos) +
                                      ": expected '*'");
            ++pos;
            skip_ws();
        }
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '\''))
            ++pos;
        if (pos == start)
            throw ValidationError("word parse error at position " + std::to_string(pos) +
                                  ": expected a letter name");
        std::string name = text.substr(start, pos - start);
        long e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            size_t estart = pos;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == estart)
                throw ValidationError("word parse error: malformed exponent after '" + name + "'");
            e = std::stol(text.substr(estart, pos - estart));
            if (e > 1024 || e < -1024) throw ValidationError("word exponent out of range");
        }
        if (name == "1") {
            if (e != 1) throw ValidationError("the identity letter takes no exponent");
        } else {
            int id = id_of(name);
            if (id < 0) throw ValidationError("unknown letter '" + name + "'");
            int8_t sign = e < 0 ? -1 : 1;
            for (long k = 0; k < (e < 0 ? -e : e); ++k)
                w.push_back(WLetter{static_cast<uint32_t>(id), sign});
        }
        expect_letter = false;
    }
    return w;
}

} // namespace gtcf::groups
