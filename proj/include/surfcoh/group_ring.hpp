#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "surfcoh/word.hpp"

namespace surfcoh {

// Exact integer type for all coefficients: s_1 sums over U-powers and the
// search pipelines multiply many terms, so overflow must be impossible.
using Int = boost::multiprecision::cpp_int;

// Canonical total order on normal-form words: formatted-string length, then
// lexicographic on the formatted spelling. Keeps serialization deterministic.
struct WordOrder {
    static std::size_t formatted_size(const Word& w) {
        std::size_t n = 0;
        for (const Letter& l : w.letters) {
            n += 2;
            for (int v = l.index; v >= 10; v /= 10) ++n;
        }
        return n == 0 ? 1 : n;
    }

    bool operator()(const Word& x, const Word& y) const {
        std::size_t nx = formatted_size(x), ny = formatted_size(y);
        if (nx != ny) return nx < ny;
        return format_word(x) < format_word(y);
    }
};

// An element of the integral group ring Z[pi_g]: finitely many normal-form
// words with nonzero integer coefficients.
class GroupRingElement {
  public:
    explicit GroupRingElement(int genus) : genus_(genus) {}

    static GroupRingElement zero(int genus) { return GroupRingElement(genus); }

    static GroupRingElement one(int genus) {
        GroupRingElement e(genus);
        e.add_term(Word::identity(genus), 1);
        return e;
    }

    // Normalizes the word before storing.
    static GroupRingElement from_word(const Word& w, Int coeff = 1) {
        GroupRingElement e(w.genus);
        e.add_term(normal_form(w), std::move(coeff));
        return e;
    }

    [[nodiscard]] int genus() const { return genus_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<Word, Int, WordOrder>& terms() const { return terms_; }

    // Key must be in normal form.
    void add_term(const Word& w, const Int& coeff) {
        if (coeff == 0) return;
        if (w.genus != genus_) throw std::invalid_argument("genus mismatch in group-ring term");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        require_same_genus(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }

    GroupRingElement& operator-=(const GroupRingElement& o) {
        require_same_genus(o);
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
        a += b;
        return a;
    }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
        a -= b;
        return a;
    }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.require_same_genus(b);
        GroupRingElement r(a.genus_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) r.add_term(normal_form(concat(wa, wb)), ca * cb);
        return r;
    }

    friend GroupRingElement operator*(const Int& k, GroupRingElement a) {
        a.scale(k);
        return a;
    }

    friend GroupRingElement operator-(GroupRingElement a) {
        a.scale(-1);
        return a;
    }

    void scale(const Int& k) {
        if (k == 0) {
            terms_.clear();
            return;
        }
        for (auto& [w, c] : terms_) c *= k;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.genus_ == b.genus_ && a.terms_ == b.terms_;
    }

    // epsilon: Z[pi_g] -> Z, every group element to 1.
    [[nodiscard]] Int augmentation() const {
        Int s = 0;
        for (const auto& [w, c] : terms_) s += c;
        return s;
    }

  private:
    void require_same_genus(const GroupRingElement& o) const {
        if (genus_ != o.genus_) throw std::invalid_argument("genus mismatch in group-ring op");
    }

    int genus_;
    std::map<Word, Int, WordOrder> terms_;
};

inline Int augmentation(const GroupRingElement& x) { return x.augmentation(); }

// Text form: terms `<signed integer>*<word>` joined by +/-, e.g. `1*1-1*a1b1A1`.
inline std::string format_ring_element(const GroupRingElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        Int a = c;
        if (first) {
            if (a < 0) {
                out += '-';
                a = -a;
            }
            first = false;
        } else {
            if (a < 0) {
                out += '-';
                a = -a;
            } else {
                out += '+';
            }
        }
        out += a.str();
        out += '*';
        out += format_word(w);
    }
    return out;
}

inline GroupRingElement parse_ring_element(std::string_view text, int genus) {
    GroupRingElement r(genus);
    if (text == "0") return r;
    std::size_t i = 0;
    while (i < text.size()) {
        Int sign = 1;
        if (text[i] == '+') {
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (start == i || i >= text.size() || text[i] != '*')
            throw std::invalid_argument("malformed ring element near position " + std::to_string(i));
        Int coeff(std::string(text.substr(start, i - start)));
        ++i;  // '*'
        start = i;
        while (i < text.size() && text[i] != '+' && text[i] != '-') ++i;
        Word w = parse_word(text.substr(start, i - start), genus);
        r.add_term(normal_form(w), sign * coeff);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sign coefficient systems (one factor).
// ---------------------------------------------------------------------------

// The subset S of generators acting by -1 on Z_S.
struct SignSet {
    int genus = 2;
    std::set<std::pair<char, int>> members;  // ('a'|'b', index)

    SignSet() = default;
    SignSet(int g, std::set<std::pair<char, int>> m) : genus(g), members(std::move(m)) {
        for (const auto& [kind, idx] : members) {
            if ((kind != 'a' && kind != 'b') || idx < 1 || idx > genus)
                throw std::invalid_argument("sign-set member out of range");
        }
    }

    [[nodiscard]] bool contains(char kind, int index) const {
        return members.count({kind, index}) != 0;
    }
    [[nodiscard]] bool empty() const { return members.empty(); }

    friend bool operator==(const SignSet&, const SignSet&) = default;
    friend bool operator<(const SignSet& a, const SignSet& b) {
        if (a.genus != b.genus) return a.genus < b.genus;
        return a.members < b.members;
    }
};

inline SignSet symmetric_difference(const SignSet& s1, const SignSet& s2) {
    if (s1.genus != s2.genus) throw std::invalid_argument("genus mismatch in symmetric difference");
    SignSet r;
    r.genus = s1.genus;
    for (const auto& m : s1.members)
        if (!s2.members.count(m)) r.members.insert(m);
    for (const auto& m : s2.members)
        if (!s1.members.count(m)) r.members.insert(m);
    return r;
}

// Sign set text form: comma-joined generators, `-` for the empty set.
inline std::string format_sign_set(const SignSet& s) {
    if (s.members.empty()) return "-";
    std::string out;
    for (const auto& [kind, idx] : s.members) {
        if (!out.empty()) out += ',';
        out += kind;
        out += std::to_string(idx);
    }
    return out;
}

inline SignSet parse_sign_set(std::string_view text, int genus) {
    SignSet s;
    s.genus = genus;
    if (text == "-" || text.empty()) return s;
    std::size_t i = 0;
    while (i < text.size()) {
        char kind = text[i];
        if (kind != 'a' && kind != 'b')
            throw std::invalid_argument("sign-set generator must be a<i> or b<i>");
        ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (start == i) throw std::invalid_argument("missing index in sign set");
        int idx = std::stoi(std::string(text.substr(start, i - start)));
        if (idx < 1 || idx > genus) throw std::invalid_argument("sign-set index out of range");
        s.members.insert({kind, idx});
        if (i < text.size()) {
            if (text[i] != ',') throw std::invalid_argument("sign-set entries must be comma separated");
            ++i;
        }
    }
    return s;
}

// (-1)^{number of letters of w, ignoring inversion, lying in S}
inline int word_sign(const Word& w, const SignSet& s) {
    if (w.genus != s.genus) throw std::invalid_argument("genus mismatch in word_sign");
    int sign = 1;
    for (const Letter& l : w.letters)
        if (s.contains(l.kind, l.index)) sign = -sign;
    return sign;
}

inline Int sign_evaluate(const GroupRingElement& x, const SignSet& s) {
    if (x.genus() != s.genus) throw std::invalid_argument("genus mismatch in sign_evaluate");
    Int total = 0;
    for (const auto& [w, c] : x.terms()) total += c * word_sign(w, s);
    return total;
}

// ---------------------------------------------------------------------------
// Fox free differential calculus.
// ---------------------------------------------------------------------------

// d(v_1...v_n)/du = dv_1/du + v_1 d(v_2...v_n)/du, with du/du = 1 and
// d(ubar)/du = -ubar. Accepts arbitrary words (no prior normalization); the
// output keys are normalized.
inline GroupRingElement fox_derivative(const Word& w, const Letter& gen) {
    if (gen.inverted) throw std::invalid_argument("fox_derivative expects a non-inverted generator");
    if (gen.index < 1 || gen.index > w.genus)
        throw std::invalid_argument("fox_derivative generator out of range");
    GroupRingElement result(w.genus);
    Word prefix = Word::identity(w.genus);
    for (const Letter& l : w.letters) {
        if (l.kind == gen.kind && l.index == gen.index) {
            if (!l.inverted) {
                result.add_term(normal_form(prefix), 1);
            } else {
                result.add_term(normal_form(concat(prefix, single_letter_word(w.genus, l))), -1);
            }
        }
        prefix.letters.push_back(l);
    }
    return result;
}

}  // namespace surfcoh
