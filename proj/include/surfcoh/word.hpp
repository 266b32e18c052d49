#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surfcoh {

// A signed generator of pi_g: a_i or b_i (1 <= i <= g), possibly inverted.
struct Letter {
    char kind = 'a';  // 'a' or 'b'
    int index = 1;
    bool inverted = false;

    [[nodiscard]] Letter inverse() const { return Letter{kind, index, !inverted}; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

inline Letter gen_a(int i, bool inv = false) { return Letter{'a', i, inv}; }
inline Letter gen_b(int i, bool inv = false) { return Letter{'b', i, inv}; }

inline void append_letter(std::string& out, const Letter& l) {
    char c = l.kind;
    if (l.inverted) c = static_cast<char>(c - 'a' + 'A');
    out.push_back(c);
    out.append(std::to_string(l.index));
}

inline std::string format_letter(const Letter& l) {
    std::string s;
    append_letter(s, l);
    return s;
}

// A word in the alphabet a_i, A_i, b_i, B_i for the ambient genus.
// The empty letter sequence spells the neutral element and formats as "1".
struct Word {
    int genus = 2;
    std::vector<Letter> letters;

    Word() = default;
    Word(int g, std::vector<Letter> ls) : genus(g), letters(std::move(ls)) {
        if (genus < 2) throw std::invalid_argument("genus must be at least 2");
        for (const Letter& l : letters)
            if (l.index < 1 || l.index > genus)
                throw std::invalid_argument("letter index out of range for genus " +
                                            std::to_string(genus) + ": " + format_letter(l));
    }
    static Word identity(int g) { return Word(g, {}); }

    [[nodiscard]] bool empty() const { return letters.empty(); }
    [[nodiscard]] std::size_t size() const { return letters.size(); }

    friend bool operator==(const Word&, const Word&) = default;
};

inline std::string format_word(const Word& w) {
    if (w.letters.empty()) return "1";
    std::string s;
    for (const Letter& l : w.letters) append_letter(s, l);
    return s;
}

// Grammar (bit-exact): word := "1" | token+ ; token := [abAB] digit+
inline Word parse_word(std::string_view text, int genus) {
    if (genus < 2) throw std::invalid_argument("genus must be at least 2");
    if (text == "1") return Word::identity(genus);
    if (text.empty()) throw std::invalid_argument("empty word text (spell the identity as \"1\")");
    std::vector<Letter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        Letter l;
        switch (c) {
            case 'a': l = Letter{'a', 0, false}; break;
            case 'b': l = Letter{'b', 0, false}; break;
            case 'A': l = Letter{'a', 0, true}; break;
            case 'B': l = Letter{'b', 0, true}; break;
            default:
                throw std::invalid_argument("malformed token at position " + std::to_string(i) +
                                            " in \"" + std::string(text) + "\"");
        }
        ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start)
            throw std::invalid_argument("missing index after letter at position " +
                                        std::to_string(start - 1) + " in \"" + std::string(text) + "\"");
        int idx = 0;
        auto res = std::from_chars(text.data() + start, text.data() + i, idx);
        if (res.ec != std::errc() || res.ptr != text.data() + i)
            throw std::invalid_argument("bad index in \"" + std::string(text) + "\"");
        if (idx < 1 || idx > genus)
            throw std::invalid_argument("index " + std::to_string(idx) + " out of range 1.." +
                                        std::to_string(genus));
        l.index = idx;
        letters.push_back(l);
    }
    return Word(genus, std::move(letters));
}

inline Word concat(const Word& x, const Word& y) {
    if (x.genus != y.genus) throw std::invalid_argument("genus mismatch in concat");
    Word r = x;
    r.letters.insert(r.letters.end(), y.letters.begin(), y.letters.end());
    return r;
}

inline Word inverse_word(const Word& w) {
    Word r(w.genus, {});
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        r.letters.push_back(it->inverse());
    return r;
}

inline Word single_letter_word(int genus, Letter l) { return Word(genus, {l}); }

// [x, y] := x y x^{-1} y^{-1}
inline Word commutator(const Word& x, const Word& y) {
    return concat(concat(x, y), concat(inverse_word(x), inverse_word(y)));
}

// c_l = [a_l, b_l]
inline Word commutator_c(int l, int genus) {
    return commutator(single_letter_word(genus, gen_a(l)), single_letter_word(genus, gen_b(l)));
}

// P_l = c_1 ... c_l (empty for l = 0); not in normal form when l = g.
inline Word p_word(int l, int genus) {
    if (l < 0 || l > genus) throw std::invalid_argument("P_l requires 0 <= l <= g");
    Word r = Word::identity(genus);
    for (int j = 1; j <= l; ++j) r = concat(r, commutator_c(j, genus));
    return r;
}

// R_g = [a_1,b_1] ... [a_g,b_g]
inline Word relator(int genus) { return p_word(genus, genus); }

// ---------------------------------------------------------------------------
// Hermiller's complete rewriting system for pi_g.
// ---------------------------------------------------------------------------

struct Rule {
    std::vector<Letter> lhs;
    std::vector<Letter> rhs;
};

struct RuleSet {
    int genus = 2;
    std::vector<Rule> rules;   // 4g free reductions followed by the four long rules
    std::size_t max_lhs = 2;

    static const RuleSet& for_genus(int genus);
};

namespace detail {

inline RuleSet build_rules(int g) {
    if (g < 2) throw std::invalid_argument("genus must be at least 2");
    RuleSet rs;
    rs.genus = g;
    auto add = [&rs](const Word& lhs, const Word& rhs) {
        rs.rules.push_back(Rule{lhs.letters, rhs.letters});
    };
    const Word one = Word::identity(g);
    for (int i = 1; i <= g; ++i) {
        auto a = single_letter_word(g, gen_a(i));
        auto ai = single_letter_word(g, gen_a(i, true));
        auto b = single_letter_word(g, gen_b(i));
        auto bi = single_letter_word(g, gen_b(i, true));
        add(concat(a, ai), one);
        add(concat(ai, a), one);
        add(concat(b, bi), one);
        add(concat(bi, b), one);
    }
    const Word ag = single_letter_word(g, gen_a(g));
    const Word agbar = single_letter_word(g, gen_a(g, true));
    const Word bg = single_letter_word(g, gen_b(g));
    const Word bgbar = single_letter_word(g, gen_b(g, true));
    // descending product [b_{g-1},a_{g-1}] ... [b_1,a_1]
    Word desc = Word::identity(g);
    for (int k = g - 1; k >= 1; --k)
        desc = concat(desc, commutator(single_letter_word(g, gen_b(k)), single_letter_word(g, gen_a(k))));
    // ascending product [a_1,b_1] ... [a_{g-1},b_{g-1}]
    const Word asc = p_word(g - 1, g);
    add(concat(ag, bg), concat(concat(desc, bg), ag));                 // a_g b_g -> ... b_g a_g
    add(concat(agbar, bgbar), concat(concat(bgbar, agbar), desc));     // A_g B_g -> B_g A_g ...
    add(concat(ag, bgbar), concat(concat(bgbar, asc), ag));            // a_g B_g -> B_g ... a_g
    add(concat(concat(agbar, desc), bg), concat(bg, agbar));           // A_g ... b_g -> b_g A_g
    rs.max_lhs = 2;
    for (const Rule& r : rs.rules) rs.max_lhs = std::max(rs.max_lhs, r.lhs.size());
    return rs;
}

}  // namespace detail

inline const RuleSet& RuleSet::for_genus(int genus) {
    static std::map<int, RuleSet> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(genus);
    if (it == cache.end()) it = cache.emplace(genus, detail::build_rules(genus)).first;
    return it->second;
}

namespace detail {

inline bool matches_at(const std::vector<Letter>& s, std::size_t pos, const std::vector<Letter>& lhs) {
    if (pos + lhs.size() > s.size()) return false;
    for (std::size_t j = 0; j < lhs.size(); ++j)
        if (!(s[pos + j] == lhs[j])) return false;
    return true;
}

// First rule (in listed order) matching at pos, or -1.
inline int match_rule_at(const std::vector<Letter>& s, std::size_t pos, const RuleSet& rs) {
    for (std::size_t r = 0; r < rs.rules.size(); ++r)
        if (matches_at(s, pos, rs.rules[r].lhs)) return static_cast<int>(r);
    return -1;
}

inline void splice(std::vector<Letter>& s, std::size_t pos, const Rule& rule) {
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos),
            s.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()));
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), rule.rhs.begin(), rule.rhs.end());
}

}  // namespace detail

enum class RewriteStrategy { Leftmost, Rightmost };

// Rewrites to the unique normal form. Fuel bound 10*(len+1)^2: the system is
// terminating, so running out of fuel signals an implementation bug.
inline Word normal_form(const Word& w, RewriteStrategy strategy = RewriteStrategy::Leftmost) {
    const RuleSet& rs = RuleSet::for_genus(w.genus);
    std::vector<Letter> s = w.letters;
    long long fuel = 10LL * static_cast<long long>(w.letters.size() + 1) *
                     static_cast<long long>(w.letters.size() + 1);
    if (strategy == RewriteStrategy::Leftmost) {
        std::size_t pos = 0;  // invariant: no redex starts before pos
        while (pos < s.size()) {
            int r = detail::match_rule_at(s, pos, rs);
            if (r < 0) {
                ++pos;
                continue;
            }
            if (--fuel < 0)
                throw std::runtime_error("rewrite fuel exhausted on " + format_word(w));
            detail::splice(s, pos, rs.rules[static_cast<std::size_t>(r)]);
            std::size_t back = rs.max_lhs - 1;
            pos = pos > back ? pos - back : 0;
        }
    } else {
        for (;;) {
            int best_pos = -1, best_rule = -1;
            for (std::size_t pos = s.size(); pos-- > 0;) {
                int r = detail::match_rule_at(s, pos, rs);
                if (r >= 0) {
                    best_pos = static_cast<int>(pos);
                    best_rule = r;
                    break;
                }
            }
            if (best_pos < 0) break;
            if (--fuel < 0)
                throw std::runtime_error("rewrite fuel exhausted on " + format_word(w));
            detail::splice(s, static_cast<std::size_t>(best_pos),
                           rs.rules[static_cast<std::size_t>(best_rule)]);
        }
    }
    return Word(w.genus, std::move(s));
}

inline bool is_normal_form(const Word& w) {
    const RuleSet& rs = RuleSet::for_genus(w.genus);
    for (std::size_t pos = 0; pos < w.letters.size(); ++pos)
        if (detail::match_rule_at(w.letters, pos, rs) >= 0) return false;
    return true;
}

// x ends like y: N(y) is a literal suffix of N(x). Both arguments must already
// be in normal form (the prefix is then automatically normal).
inline bool ends_like(const Word& x, const Word& y) {
    if (x.genus != y.genus) throw std::invalid_argument("genus mismatch in ends_like");
    if (!is_normal_form(x) || !is_normal_form(y))
        throw std::invalid_argument("ends_like requires normal-form arguments");
    if (y.letters.size() > x.letters.size()) return false;
    return std::equal(y.letters.rbegin(), y.letters.rend(), x.letters.rbegin());
}

// ---------------------------------------------------------------------------
// Special words U, T_n, P_l, c_l, R_g.
// ---------------------------------------------------------------------------

enum class SpecialWordKind { U, T, P, C, Relator };

// U = A_g Pbar_{g-1}; T_n = (a_g P_{g-1})^n a_g; both spelled in normal form.
// P_l and c_l are the literal products (normal iff l < g); R_g = P_g.
inline Word special_word(SpecialWordKind kind, int n, int genus) {
    switch (kind) {
        case SpecialWordKind::U: {
            Word u = single_letter_word(genus, gen_a(genus, true));
            for (int k = genus - 1; k >= 1; --k)
                u = concat(u, inverse_word(commutator_c(k, genus)));
            return u;
        }
        case SpecialWordKind::T: {
            if (n < 0) throw std::invalid_argument("T_n requires n >= 0");
            Word block = concat(single_letter_word(genus, gen_a(genus)), p_word(genus - 1, genus));
            Word t = Word::identity(genus);
            for (int i = 0; i < n; ++i) t = concat(t, block);
            return concat(t, single_letter_word(genus, gen_a(genus)));
        }
        case SpecialWordKind::P:
            return p_word(n, genus);
        case SpecialWordKind::C:
            if (n < 1 || n > genus) throw std::invalid_argument("c_l requires 1 <= l <= g");
            return commutator_c(n, genus);
        case SpecialWordKind::Relator:
            return relator(genus);
    }
    throw std::invalid_argument("unknown special word kind");
}

// ---------------------------------------------------------------------------
// Suffix classification driving s_1.
// ---------------------------------------------------------------------------

struct SuffixClass {
    enum Kind { EndsLikeT, EndsLikeU, Neither };
    Kind kind = Neither;
    int n = 0;  // maximal exponent; n >= 0 for T, n >= 1 for U

    friend bool operator==(const SuffixClass&, const SuffixClass&) = default;
};

namespace detail {

inline bool is_suffix(const std::vector<Letter>& whole, const std::vector<Letter>& suffix) {
    if (suffix.size() > whole.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), whole.rbegin());
}

}  // namespace detail

// The unique maximal classification: y ends like T_n but not T_{n+1}, or like
// U^n (n >= 1) but not U^{n+1}, or neither. The two families are exclusive
// since T_n ends in a_g and U^n ends in A_1.
inline SuffixClass classify_s1_suffix(const Word& y, int genus) {
    if (y.genus != genus) throw std::invalid_argument("genus mismatch in classify_s1_suffix");
    if (!is_normal_form(y))
        throw std::invalid_argument("classify_s1_suffix requires a normal-form word");
    if (!y.letters.empty() && y.letters.back() == gen_a(genus)) {
        int n = 0;
        Word t = special_word(SpecialWordKind::T, 1, genus);
        while (t.letters.size() <= y.letters.size() && detail::is_suffix(y.letters, t.letters)) {
            ++n;
            t = special_word(SpecialWordKind::T, n + 1, genus);
        }
        return SuffixClass{SuffixClass::EndsLikeT, n};
    }
    const Word u = special_word(SpecialWordKind::U, 0, genus);
    Word power = u;
    int n = 0;
    while (power.letters.size() <= y.letters.size() && detail::is_suffix(y.letters, power.letters)) {
        ++n;
        power = concat(power, u);
    }
    if (n >= 1) return SuffixClass{SuffixClass::EndsLikeU, n};
    return SuffixClass{SuffixClass::Neither, 0};
}

// ---------------------------------------------------------------------------
// Local-confluence certification by critical-pair enumeration.
// ---------------------------------------------------------------------------

struct ConfluenceReport {
    int genus = 2;
    std::size_t pair_count = 0;
    std::size_t failures = 0;
    std::vector<std::string> failed_pairs;

    [[nodiscard]] bool all_joinable() const { return failures == 0; }
};

// Enumerates every overlap of two left-hand sides and checks that both
// one-step resolutions rewrite to the same normal form.
inline ConfluenceReport check_local_confluence(int genus) {
    const RuleSet& rs = RuleSet::for_genus(genus);
    ConfluenceReport rep;
    rep.genus = genus;
    auto record = [&](const std::vector<Letter>& word, const std::vector<Letter>& red1,
                      const std::vector<Letter>& red2) {
        ++rep.pair_count;
        Word w1 = normal_form(Word(genus, red1));
        Word w2 = normal_form(Word(genus, red2));
        if (!(w1 == w2)) {
            ++rep.failures;
            rep.failed_pairs.push_back(format_word(Word(genus, word)) + " -> " + format_word(w1) +
                                       " vs " + format_word(w2));
        }
    };
    const std::size_t nrules = rs.rules.size();
    for (std::size_t i = 0; i < nrules; ++i) {
        const Rule& r1 = rs.rules[i];
        for (std::size_t j = 0; j < nrules; ++j) {
            const Rule& r2 = rs.rules[j];
            // boundary overlaps: a proper suffix of lhs1 equals a proper prefix of lhs2
            const std::size_t kmax = std::min(r1.lhs.size(), r2.lhs.size()) - 1;
            for (std::size_t k = 1; k <= kmax; ++k) {
                bool ok = true;
                for (std::size_t t = 0; t < k && ok; ++t)
                    ok = r1.lhs[r1.lhs.size() - k + t] == r2.lhs[t];
                if (!ok) continue;
                // overlap word: lhs1 followed by the tail of lhs2
                std::vector<Letter> w = r1.lhs;
                w.insert(w.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k), r2.lhs.end());
                std::vector<Letter> red1 = r1.rhs;
                red1.insert(red1.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k), r2.lhs.end());
                std::vector<Letter> red2(r1.lhs.begin(),
                                         r1.lhs.end() - static_cast<std::ptrdiff_t>(k));
                red2.insert(red2.end(), r2.rhs.begin(), r2.rhs.end());
                record(w, red1, red2);
            }
            // containment overlaps: lhs2 occurs strictly inside lhs1
            if (r2.lhs.size() < r1.lhs.size()) {
                for (std::size_t p = 0; p + r2.lhs.size() <= r1.lhs.size(); ++p) {
                    if (!detail::matches_at(r1.lhs, p, r2.lhs)) continue;
                    std::vector<Letter> red2(r1.lhs.begin(),
                                             r1.lhs.begin() + static_cast<std::ptrdiff_t>(p));
                    red2.insert(red2.end(), r2.rhs.begin(), r2.rhs.end());
                    red2.insert(red2.end(),
                                r1.lhs.begin() + static_cast<std::ptrdiff_t>(p + r2.lhs.size()),
                                r1.lhs.end());
                    record(r1.lhs, r1.rhs, red2);
                }
            }
        }
    }
    return rep;
}

}  // namespace surfcoh
