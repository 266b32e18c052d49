#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "surfcoh/group_ring.hpp"
#include "surfcoh/word.hpp"

namespace surfcoh {

// ---------------------------------------------------------------------------
// Module bases of the one-factor resolution M_*^g: chi | alpha_i, beta_i | omega.
// ---------------------------------------------------------------------------

enum class SymbolKind { Chi, Alpha, Beta, Omega };

struct BasisSymbol {
    SymbolKind kind = SymbolKind::Chi;
    int index = 0;  // 1..g for Alpha/Beta, 0 otherwise

    [[nodiscard]] int degree() const {
        switch (kind) {
            case SymbolKind::Chi: return 0;
            case SymbolKind::Alpha:
            case SymbolKind::Beta: return 1;
            case SymbolKind::Omega: return 2;
        }
        return 0;
    }

    // Ordinal realizing chi < alpha_1 < beta_1 < ... < alpha_g < beta_g < omega.
    [[nodiscard]] int ordinal() const {
        switch (kind) {
            case SymbolKind::Chi: return 0;
            case SymbolKind::Alpha: return 2 * index - 1;
            case SymbolKind::Beta: return 2 * index;
            case SymbolKind::Omega: return 1 << 20;
        }
        return 0;
    }

    friend bool operator==(const BasisSymbol&, const BasisSymbol&) = default;
    friend bool operator<(const BasisSymbol& x, const BasisSymbol& y) {
        return x.ordinal() < y.ordinal();
    }
};

inline BasisSymbol sym_chi() { return {SymbolKind::Chi, 0}; }
inline BasisSymbol sym_alpha(int i) { return {SymbolKind::Alpha, i}; }
inline BasisSymbol sym_beta(int i) { return {SymbolKind::Beta, i}; }
inline BasisSymbol sym_omega() { return {SymbolKind::Omega, 0}; }

inline std::string format_symbol(const BasisSymbol& s) {
    switch (s.kind) {
        case SymbolKind::Chi: return "chi";
        case SymbolKind::Alpha: return "alpha" + std::to_string(s.index);
        case SymbolKind::Beta: return "beta" + std::to_string(s.index);
        case SymbolKind::Omega: return "omega";
    }
    return "?";
}

inline BasisSymbol parse_symbol(std::string_view text, int genus) {
    auto parse_index = [&](std::string_view tail) {
        int idx = std::stoi(std::string(tail));
        if (idx < 1 || idx > genus) throw std::invalid_argument("symbol index out of range");
        return idx;
    };
    if (text == "chi") return sym_chi();
    if (text == "omega") return sym_omega();
    if (text.substr(0, 5) == "alpha") return sym_alpha(parse_index(text.substr(5)));
    if (text.substr(0, 4) == "beta") return sym_beta(parse_index(text.substr(4)));
    throw std::invalid_argument("unknown basis symbol \"" + std::string(text) + "\"");
}

// One basis symbol per tensor factor.
struct TensorSymbol {
    std::vector<BasisSymbol> factors;

    TensorSymbol() = default;
    explicit TensorSymbol(std::vector<BasisSymbol> f) : factors(std::move(f)) {}

    [[nodiscard]] int degree() const {
        int d = 0;
        for (const BasisSymbol& s : factors) d += s.degree();
        return d;
    }

    friend bool operator==(const TensorSymbol&, const TensorSymbol&) = default;
    friend bool operator<(const TensorSymbol& x, const TensorSymbol& y) {
        return std::lexicographical_compare(
            x.factors.begin(), x.factors.end(), y.factors.begin(), y.factors.end(),
            [](const BasisSymbol& a, const BasisSymbol& b) { return a < b; });
    }
};

inline std::string format_tensor_symbol(const TensorSymbol& s) {
    std::string out;
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
        if (i) out += "(x)";
        out += format_symbol(s.factors[i]);
    }
    return out;
}

inline TensorSymbol parse_tensor_symbol(std::string_view text, const std::vector<int>& genera) {
    std::vector<BasisSymbol> factors;
    std::size_t pos = 0, fac = 0;
    while (true) {
        std::size_t next = text.find("(x)", pos);
        std::string_view piece =
            next == std::string_view::npos ? text.substr(pos) : text.substr(pos, next - pos);
        if (fac >= genera.size()) throw std::invalid_argument("too many tensor factors");
        factors.push_back(parse_symbol(piece, genera[fac]));
        ++fac;
        if (next == std::string_view::npos) break;
        pos = next + 3;
    }
    if (fac != genera.size()) throw std::invalid_argument("wrong number of tensor factors");
    return TensorSymbol(std::move(factors));
}

// Per-factor basis in the canonical order.
inline std::vector<BasisSymbol> factor_basis(int genus, int degree) {
    std::vector<BasisSymbol> out;
    if (degree == 0) out.push_back(sym_chi());
    if (degree == 1)
        for (int i = 1; i <= genus; ++i) {
            out.push_back(sym_alpha(i));
            out.push_back(sym_beta(i));
        }
    if (degree == 2) out.push_back(sym_omega());
    return out;
}

// Complete deterministic basis of M_degree^{g_1,...,g_n}, factors left to right.
inline std::vector<TensorSymbol> basis_of(const std::vector<int>& genera, int degree) {
    std::vector<TensorSymbol> out;
    std::vector<BasisSymbol> current(genera.size());
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == genera.size()) {
            if (remaining == 0) out.emplace_back(current);
            return;
        }
        int rest_max = 2 * static_cast<int>(genera.size() - i - 1);
        for (int d = 0; d <= 2; ++d) {
            if (remaining - d < 0 || remaining - d > rest_max) continue;
            for (const BasisSymbol& s : factor_basis(genera[i], d)) {
                current[i] = s;
                self(self, i + 1, remaining - d);
            }
        }
    };
    if (degree >= 0 && degree <= 2 * static_cast<int>(genera.size())) rec(rec, 0, degree);
    return out;
}

// ---------------------------------------------------------------------------
// Chain elements of tensor resolutions.
// ---------------------------------------------------------------------------

struct ChainKey {
    std::vector<Word> words;  // one normal form per factor
    TensorSymbol symbol;

    friend bool operator==(const ChainKey&, const ChainKey&) = default;
};

struct ChainKeyOrder {
    bool operator()(const ChainKey& x, const ChainKey& y) const {
        if (x.symbol < y.symbol) return true;
        if (y.symbol < x.symbol) return false;
        WordOrder wo;
        for (std::size_t i = 0; i < x.words.size() && i < y.words.size(); ++i) {
            if (wo(x.words[i], y.words[i])) return true;
            if (wo(y.words[i], x.words[i])) return false;
        }
        return x.words.size() < y.words.size();
    }
};

// A homogeneous element of M_k^{g_1,...,g_n}: an integer combination of pairs
// (group-element tuple, tensor basis symbol). Group coordinates are kept in
// normal form and coefficients are never zero.
class ChainElement {
  public:
    ChainElement(std::vector<int> genera, int degree)
        : genera_(std::move(genera)), degree_(degree) {
        if (genera_.empty()) throw std::invalid_argument("at least one tensor factor required");
        for (int g : genera_)
            if (g < 2) throw std::invalid_argument("genus must be at least 2");
        // degrees above 2n are allowed; the module there is zero, so only the
        // empty element exists (homotopies on top-degree elements land there)
        if (degree_ < 0) throw std::invalid_argument("negative degree");
    }

    static ChainElement zero(std::vector<int> genera, int degree) {
        return ChainElement(std::move(genera), degree);
    }

    // Basis element 1*(1,...,1).symbol.
    static ChainElement basis(std::vector<int> genera, const TensorSymbol& symbol) {
        ChainElement e(genera, symbol.degree());
        std::vector<Word> words;
        words.reserve(genera.size());
        for (int g : genera) words.push_back(Word::identity(g));
        e.add_term(std::move(words), symbol, 1);
        return e;
    }

    [[nodiscard]] const std::vector<int>& genera() const { return genera_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<ChainKey, Int, ChainKeyOrder>& terms() const { return terms_; }

    // Words are normalized here; the symbol must match the element's degree.
    void add_term(std::vector<Word> words, const TensorSymbol& symbol, const Int& coeff) {
        if (coeff == 0) return;
        if (words.size() != genera_.size() || symbol.factors.size() != genera_.size())
            throw std::invalid_argument("factor count mismatch in chain term");
        if (symbol.degree() != degree_)
            throw std::invalid_argument("chain element must stay homogeneous");
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (words[i].genus != genera_[i])
                throw std::invalid_argument("genus mismatch in chain term");
            words[i] = normal_form(words[i]);
            if (symbol.factors[i].index > genera_[i])
                throw std::invalid_argument("symbol index exceeds genus");
        }
        ChainKey key{std::move(words), symbol};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ChainElement& operator+=(const ChainElement& o) {
        require_compatible(o);
        for (const auto& [k, c] : o.terms_) add_term(k.words, k.symbol, c);
        return *this;
    }
    ChainElement& operator-=(const ChainElement& o) {
        require_compatible(o);
        for (const auto& [k, c] : o.terms_) add_term(k.words, k.symbol, -c);
        return *this;
    }
    friend ChainElement operator+(ChainElement a, const ChainElement& b) { return a += b; }
    friend ChainElement operator-(ChainElement a, const ChainElement& b) { return a -= b; }
    friend ChainElement operator*(const Int& k, ChainElement a) {
        a.scale(k);
        return a;
    }
    void scale(const Int& k) {
        if (k == 0) {
            terms_.clear();
            return;
        }
        for (auto& [key, c] : terms_) c *= k;
    }

    friend bool operator==(const ChainElement& a, const ChainElement& b) {
        return a.genera_ == b.genera_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    // Diagonal-module action of a group tuple.
    [[nodiscard]] ChainElement acted_by(const std::vector<Word>& y) const {
        if (y.size() != genera_.size()) throw std::invalid_argument("tuple length mismatch");
        ChainElement r(genera_, degree_);
        for (const auto& [k, c] : terms_) {
            std::vector<Word> words;
            words.reserve(k.words.size());
            for (std::size_t i = 0; i < k.words.size(); ++i)
                words.push_back(concat(y[i], k.words[i]));
            r.add_term(std::move(words), k.symbol, c);
        }
        return r;
    }

    // Augmentation of the tensor resolution: sum of coefficients in degree 0,
    // zero in positive degree.
    [[nodiscard]] Int augmentation() const {
        if (degree_ != 0) return 0;
        Int s = 0;
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

  private:
    void require_compatible(const ChainElement& o) const {
        if (genera_ != o.genera_ || degree_ != o.degree_)
            throw std::invalid_argument("chain elements live in different modules");
    }

    std::vector<int> genera_;
    int degree_;
    std::map<ChainKey, Int, ChainKeyOrder> terms_;
};

// Convenience builders for single-factor elements.
inline ChainElement chain_term(int genus, const Word& y, const BasisSymbol& s, Int coeff = 1) {
    ChainElement e({genus}, s.degree());
    e.add_term({y}, TensorSymbol({s}), std::move(coeff));
    return e;
}

inline ChainElement ring_times_symbol(const GroupRingElement& x, const BasisSymbol& s) {
    ChainElement e({x.genus()}, s.degree());
    for (const auto& [w, c] : x.terms()) e.add_term({w}, TensorSymbol({s}), c);
    return e;
}

// x (x) y for plain elements (no Koszul sign: signs belong to maps, not values).
inline ChainElement tensor_product(const ChainElement& x, const ChainElement& y) {
    std::vector<int> genera = x.genera();
    genera.insert(genera.end(), y.genera().begin(), y.genera().end());
    ChainElement r(genera, x.degree() + y.degree());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            std::vector<Word> words = kx.words;
            words.insert(words.end(), ky.words.begin(), ky.words.end());
            std::vector<BasisSymbol> syms = kx.symbol.factors;
            syms.insert(syms.end(), ky.symbol.factors.begin(), ky.symbol.factors.end());
            r.add_term(std::move(words), TensorSymbol(std::move(syms)), cx * cy);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Differentials.
// ---------------------------------------------------------------------------

// d_2(omega) computed from Fox derivatives of the relator.
inline ChainElement d2_via_fox(int genus) {
    ChainElement r({genus}, 1);
    const Word rel = relator(genus);
    for (int i = 1; i <= genus; ++i) {
        r += ring_times_symbol(fox_derivative(rel, gen_a(i)), sym_alpha(i));
        r += ring_times_symbol(fox_derivative(rel, gen_b(i)), sym_beta(i));
    }
    return r;
}

// The explicit total-Fox-derivative form:
// d_2(omega) = sum_{i<g} [P_{i-1}(1 - a_i b_i A_i) alpha_i + P_{i-1}(a_i - c_i) beta_i]
//              + (P_{g-1} - b_g) alpha_g + (P_{g-1} a_g - 1) beta_g.
inline ChainElement d2_closed_form(int genus) {
    ChainElement r({genus}, 1);
    for (int i = 1; i < genus; ++i) {
        const Word p = p_word(i - 1, genus);
        const Word abA = parse_word("a" + std::to_string(i) + "b" + std::to_string(i) + "A" +
                                        std::to_string(i),
                                    genus);
        r.add_term({p}, TensorSymbol({sym_alpha(i)}), 1);
        r.add_term({concat(p, abA)}, TensorSymbol({sym_alpha(i)}), -1);
        r.add_term({concat(p, single_letter_word(genus, gen_a(i)))}, TensorSymbol({sym_beta(i)}), 1);
        r.add_term({concat(p, commutator_c(i, genus))}, TensorSymbol({sym_beta(i)}), -1);
    }
    const Word pg1 = p_word(genus - 1, genus);
    r.add_term({pg1}, TensorSymbol({sym_alpha(genus)}), 1);
    r.add_term({single_letter_word(genus, gen_b(genus))}, TensorSymbol({sym_alpha(genus)}), -1);
    r.add_term({concat(pg1, single_letter_word(genus, gen_a(genus)))},
               TensorSymbol({sym_beta(genus)}), 1);
    r.add_term({Word::identity(genus)}, TensorSymbol({sym_beta(genus)}), -1);
    return r;
}

// Differential of one factor on a basis symbol (deleted complex: d(chi) = 0).
inline ChainElement factor_differential(const BasisSymbol& s, int genus) {
    switch (s.kind) {
        case SymbolKind::Chi:
            return ChainElement::zero({genus}, 0);  // placeholder degree, element is empty
        case SymbolKind::Alpha: {
            ChainElement r({genus}, 0);
            r.add_term({single_letter_word(genus, gen_a(s.index))}, TensorSymbol({sym_chi()}), 1);
            r.add_term({Word::identity(genus)}, TensorSymbol({sym_chi()}), -1);
            return r;
        }
        case SymbolKind::Beta: {
            ChainElement r({genus}, 0);
            r.add_term({single_letter_word(genus, gen_b(s.index))}, TensorSymbol({sym_chi()}), 1);
            r.add_term({Word::identity(genus)}, TensorSymbol({sym_chi()}), -1);
            return r;
        }
        case SymbolKind::Omega:
            return d2_closed_form(genus);
    }
    throw std::logic_error("unreachable");
}

// d_1 on a single-factor degree-1 element.
inline ChainElement d1(const ChainElement& x) {
    if (x.genera().size() != 1 || x.degree() != 1)
        throw std::invalid_argument("d1 expects a single-factor degree-1 element");
    const int g = x.genera()[0];
    ChainElement r({g}, 0);
    for (const auto& [k, c] : x.terms()) {
        ChainElement d = factor_differential(k.symbol.factors[0], g);
        d = d.acted_by(k.words);
        d.scale(c);
        r += d;
    }
    return r;
}

// d_2 on a single-factor degree-2 element.
inline ChainElement d2(const ChainElement& x) {
    if (x.genera().size() != 1 || x.degree() != 2)
        throw std::invalid_argument("d2 expects a single-factor degree-2 element");
    const int g = x.genera()[0];
    ChainElement r({g}, 1);
    for (const auto& [k, c] : x.terms()) {
        ChainElement d = d2_closed_form(g);
        d = d.acted_by(k.words);
        d.scale(c);
        r += d;
    }
    return r;
}

// Koszul-signed tensor differential:
// d(x_1 (x) ... (x) x_n) = sum_i (-1)^{deg(x_1...x_{i-1})} x_1 (x) ... d(x_i) ... (x) x_n.
inline ChainElement tensor_differential(const ChainElement& x) {
    if (x.degree() == 0) return ChainElement::zero(x.genera(), 0);
    ChainElement r(x.genera(), x.degree() - 1);
    for (const auto& [k, c] : x.terms()) {
        int sign = 1;
        for (std::size_t i = 0; i < k.symbol.factors.size(); ++i) {
            const BasisSymbol& s = k.symbol.factors[i];
            if (s.degree() > 0) {
                ChainElement d = factor_differential(s, x.genera()[i]);
                for (const auto& [dk, dc] : d.terms()) {
                    std::vector<Word> words = k.words;
                    words[i] = concat(words[i], dk.words[0]);
                    std::vector<BasisSymbol> syms = k.symbol.factors;
                    syms[i] = dk.symbol.factors[0];
                    r.add_term(std::move(words), TensorSymbol(std::move(syms)), c * dc * sign);
                }
            }
            if (s.degree() % 2 == 1) sign = -sign;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Serialization: lines `<int> * (<word>,...,<word>) . <symbol(x)...>`.
// ---------------------------------------------------------------------------

inline std::string format_chain(const ChainElement& x) {
    std::string out;
    for (const auto& [k, c] : x.terms()) {
        out += c.str();
        out += " * (";
        for (std::size_t i = 0; i < k.words.size(); ++i) {
            if (i) out += ',';
            out += format_word(k.words[i]);
        }
        out += ") . ";
        out += format_tensor_symbol(k.symbol);
        out += '\n';
    }
    return out;
}

inline ChainElement parse_chain(std::string_view text, const std::vector<int>& genera, int degree) {
    ChainElement r(genera, degree);
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t star = line.find(" * (");
        std::size_t close = line.find(") . ");
        if (star == std::string::npos || close == std::string::npos)
            throw std::invalid_argument("malformed chain line: " + line);
        Int coeff(line.substr(0, star));
        std::string words_part = line.substr(star + 4, close - star - 4);
        std::string sym_part = line.substr(close + 4);
        std::vector<Word> words;
        std::size_t pos = 0, fac = 0;
        while (true) {
            std::size_t comma = words_part.find(',', pos);
            std::string piece = comma == std::string::npos ? words_part.substr(pos)
                                                           : words_part.substr(pos, comma - pos);
            if (fac >= genera.size()) throw std::invalid_argument("too many words in chain line");
            words.push_back(parse_word(piece, genera[fac]));
            ++fac;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        r.add_term(std::move(words), parse_tensor_symbol(sym_part, genera), coeff);
    }
    return r;
}

}  // namespace surfcoh
