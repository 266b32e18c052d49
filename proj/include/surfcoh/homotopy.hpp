#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfcoh/resolution.hpp"
#include "surfcoh/sampling.hpp"

namespace surfcoh {

// ---------------------------------------------------------------------------
// The contracting homotopy s_{-1}, s_0, s_1 of the one-factor resolution.
// ---------------------------------------------------------------------------

// s_{-1}(n) = n.chi
inline ChainElement s_minus1(const Int& n, int genus) {
    ChainElement r({genus}, 0);
    r.add_term({Word::identity(genus)}, TensorSymbol({sym_chi()}), n);
    return r;
}

// s_0(y chi) as the total Fox derivative over the normal form of y:
// s_0(l_1...l_k chi) = s_0(l_1 chi) + l_1 s_0(l_2 chi) + ... with
// s_0(a_i chi) = alpha_i, s_0(b_i chi) = beta_i, s_0(A_i chi) = -A_i alpha_i,
// s_0(B_i chi) = -B_i beta_i.
inline ChainElement s0_word(const Word& y, int genus, const Int& coeff = 1) {
    ChainElement r({genus}, 1);
    const Word n = normal_form(y);
    Word prefix = Word::identity(genus);
    for (const Letter& l : n.letters) {
        BasisSymbol sym = l.kind == 'a' ? sym_alpha(l.index) : sym_beta(l.index);
        if (!l.inverted) {
            r.add_term({prefix}, TensorSymbol({sym}), coeff);
        } else {
            Word with = prefix;
            with.letters.push_back(l);
            r.add_term({with}, TensorSymbol({sym}), -coeff);
        }
        prefix.letters.push_back(l);
    }
    return r;
}

inline ChainElement s0(const ChainElement& x) {
    if (x.genera().size() != 1 || x.degree() != 0)
        throw std::invalid_argument("s0 expects a single-factor degree-0 element");
    const int g = x.genera()[0];
    ChainElement r({g}, 1);
    for (const auto& [k, c] : x.terms()) r += s0_word(k.words[0], g, c);
    return r;
}

// s_1(y lambda): zero unless lambda = beta_g; on y beta_g the value is read
// off the maximal T_n / U^n suffix of N(y).
inline ChainElement s1_term(const Word& y, const BasisSymbol& lambda, int genus,
                            const Int& coeff = 1) {
    ChainElement r({genus}, 2);
    if (!(lambda == sym_beta(genus))) return r;
    const Word n = normal_form(y);
    SuffixClass cls = classify_s1_suffix(n, genus);
    const Word u = special_word(SpecialWordKind::U, 0, genus);
    if (cls.kind == SuffixClass::EndsLikeT) {
        Word acc = n;
        for (int i = 1; i <= cls.n + 1; ++i) {
            acc = normal_form(concat(acc, u));
            r.add_term({acc}, TensorSymbol({sym_omega()}), coeff);
        }
    } else if (cls.kind == SuffixClass::EndsLikeU) {
        const Word ubar = inverse_word(u);
        Word acc = n;
        for (int i = 0; i <= cls.n - 1; ++i) {
            if (i > 0) acc = normal_form(concat(acc, ubar));
            r.add_term({acc}, TensorSymbol({sym_omega()}), -coeff);
        }
    }
    return r;
}

inline ChainElement s1(const ChainElement& x) {
    if (x.genera().size() != 1 || x.degree() != 1)
        throw std::invalid_argument("s1 expects a single-factor degree-1 element");
    const int g = x.genera()[0];
    ChainElement r({g}, 2);
    for (const auto& [k, c] : x.terms()) r += s1_term(k.words[0], k.symbol.factors[0], g, c);
    return r;
}

// Dispatch of the one-factor homotopy on a single coordinate.
inline ChainElement s_single(const Word& y, const BasisSymbol& sym, int genus) {
    switch (sym.degree()) {
        case 0: return s0_word(y, genus);
        case 1: return s1_term(y, sym, genus);
        default: return ChainElement::zero({genus}, sym.degree() + 1);
    }
}

// ---------------------------------------------------------------------------
// Tensor homotopies.
// ---------------------------------------------------------------------------

// chi (x) ... (x) chi with identity coordinates.
inline ChainElement homotopy_unit(const std::vector<int>& genera) {
    std::vector<BasisSymbol> syms(genera.size(), sym_chi());
    return ChainElement::basis(genera, TensorSymbol(std::move(syms)));
}

namespace detail {

// Shared summand iteration for u and w: the i-th summand of
// sum_i (s_{-1} eps)(y_1) (x) ... (x) s(y_i) (x) y_{i+1} (x) ...
// restricted to coordinates [begin, end); coordinates in [reset_begin, begin)
// additionally have their words reset to 1 (the (u_{-1} eps) part of w).
inline void add_u_summands(ChainElement& out, const ChainKey& key, const Int& coeff,
                           const std::vector<int>& genera, std::size_t begin, std::size_t end,
                           std::size_t reset_begin) {
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin && !(key.symbol.factors[i - 1] == sym_chi())) break;
        ChainElement si = s_single(key.words[i], key.symbol.factors[i], genera[i]);
        for (const auto& [sk, sc] : si.terms()) {
            std::vector<Word> words = key.words;
            std::vector<BasisSymbol> syms = key.symbol.factors;
            for (std::size_t j = reset_begin; j < i; ++j) {
                words[j] = Word::identity(genera[j]);
                syms[j] = sym_chi();
            }
            words[i] = sk.words[0];
            syms[i] = sk.symbol.factors[0];
            out.add_term(std::move(words), TensorSymbol(std::move(syms)), coeff * sc);
        }
    }
}

}  // namespace detail

// u_k(y_1 (x) ... (x) y_n) = sum_i (s_{-1} eps)(y_1) (x) ... (x) s(y_i) (x) y_{i+1} ...
// No Koszul signs: the i-th summand is nonzero only when the prefix has degree 0.
inline ChainElement homotopy_u(const ChainElement& x) {
    ChainElement r(x.genera(), x.degree() + 1);
    for (const auto& [k, c] : x.terms())
        detail::add_u_summands(r, k, c, x.genera(), 0, x.genera().size(), 0);
    return r;
}

// w_k(z_1 (x) z_2) = u(z_1) (x) z_2 + (u_{-1} eps)(z_1) (x) u(z_2) on the
// doubled complex M (x) M, where both halves span `split` coordinates.
inline ChainElement homotopy_w(const ChainElement& x, std::size_t split) {
    if (x.genera().size() != 2 * split)
        throw std::invalid_argument("homotopy_w expects a doubled complex");
    ChainElement r(x.genera(), x.degree() + 1);
    for (const auto& [k, c] : x.terms()) {
        detail::add_u_summands(r, k, c, x.genera(), 0, split, 0);
        bool first_half_degree0 = true;
        for (std::size_t j = 0; j < split; ++j)
            if (!(k.symbol.factors[j] == sym_chi())) {
                first_half_degree0 = false;
                break;
            }
        if (first_half_degree0)
            detail::add_u_summands(r, k, c, x.genera(), split, 2 * split, 0);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Verification harness for the contracting-homotopy identities.
// ---------------------------------------------------------------------------

struct IdentityCheck {
    std::string name;
    std::size_t samples = 0;
    std::size_t violations = 0;
};

struct HomotopyReport {
    int genus = 2;
    std::uint64_t seed = 0;
    std::size_t requested_samples = 0;
    std::size_t max_len = 0;
    std::vector<IdentityCheck> identities;

    [[nodiscard]] bool all_zero() const {
        for (const auto& c : identities)
            if (c.violations) return false;
        return true;
    }
};

// Normal-form words exercising the s_1 case analysis: T_n / U^n suffixes, a
// trailing B_g, and the seven stopping shapes (C.1)-(C.7) in front of T_n.
inline std::vector<Word> adversarial_suffix_words(int genus, int nmax) {
    std::vector<Word> out;
    auto push = [&](const Word& w) { out.push_back(normal_form(w)); };
    const Word u = special_word(SpecialWordKind::U, 0, genus);
    const Word b1 = single_letter_word(genus, gen_b(1));
    for (int n = 0; n <= nmax; ++n) {
        Word t = special_word(SpecialWordKind::T, n, genus);
        push(t);
        push(concat(b1, t));  // (C.1)
        // (C.2)-(C.4) tails ending with c_{s+1}...c_{g-1}
        for (int s = 1; s < genus; ++s) {
            Word cs_tail = Word::identity(genus);
            for (int j = s + 1; j < genus; ++j) cs_tail = concat(cs_tail, commutator_c(j, genus));
            Word c2 = concat(single_letter_word(genus, gen_b(s, true)), cs_tail);
            Word c3 = concat(single_letter_word(genus, gen_a(s, true)), c2);
            Word c4 = concat(single_letter_word(genus, gen_b(s)), c3);
            push(concat(c2, t));
            push(concat(c3, t));
            push(concat(c4, t));
        }
        // (C.5) c_s...c_{g-1} for s >= 2, (C.6) the full c_1...c_{g-1}
        for (int s = 1; s < genus; ++s) {
            Word tail = Word::identity(genus);
            for (int j = s; j < genus; ++j) tail = concat(tail, commutator_c(j, genus));
            push(concat(tail, t));
            push(concat(concat(b1, tail), t));
        }
        // (C.7) B_g P_{g-1}
        Word c7 = concat(single_letter_word(genus, gen_b(genus, true)), p_word(genus - 1, genus));
        push(concat(c7, t));
    }
    // case (B): words ending like U^n
    Word upow = Word::identity(genus);
    for (int n = 1; n <= nmax; ++n) {
        upow = concat(upow, u);
        push(upow);
        push(concat(b1, upow));
        push(concat(single_letter_word(genus, gen_b(genus, true)), upow));
    }
    // case (A): words ending in B_g
    push(single_letter_word(genus, gen_b(genus, true)));
    push(concat(b1, single_letter_word(genus, gen_b(genus, true))));
    push(concat(upow, single_letter_word(genus, gen_b(genus, true))));
    return out;
}

// Evaluates the four identities
//   eps s_{-1} = id, d_1 s_0 + s_{-1} eps = id, d_2 s_1 + s_0 d_1 = id, s_1 d_2 = id
// on pseudo-random basis elements (plus the adversarial suffix words) and
// reports violation counts; all are expected to be zero.
inline HomotopyReport verify_contracting(int genus, std::size_t samples, std::size_t max_len,
                                         std::uint64_t seed) {
    HomotopyReport rep;
    rep.genus = genus;
    rep.seed = seed;
    rep.requested_samples = samples;
    rep.max_len = max_len;

    IdentityCheck id0{"eps s_{-1} = id", 0, 0};
    for (long n = -3; n <= 3; ++n) {
        ++id0.samples;
        if (s_minus1(n, genus).augmentation() != n) ++id0.violations;
    }

    Sampler rng(seed);
    auto random_nf = [&]() { return normal_form(rng.random_word(genus, max_len)); };

    IdentityCheck id1{"d_1 s_0 + s_{-1} eps = id", 0, 0};
    for (std::size_t t = 0; t < samples; ++t) {
        Word y = random_nf();
        ChainElement x = chain_term(genus, y, sym_chi());
        ChainElement lhs = d1(s0(x)) + s_minus1(x.augmentation(), genus);
        ++id1.samples;
        if (!(lhs == x)) ++id1.violations;
    }

    IdentityCheck id2{"d_2 s_1 + s_0 d_1 = id", 0, 0};
    auto check_id2 = [&](const Word& y, const BasisSymbol& sym) {
        ChainElement x = chain_term(genus, y, sym);
        ChainElement lhs = d2(s1(x)) + s0(d1(x));
        ++id2.samples;
        if (!(lhs == x)) ++id2.violations;
    };
    for (std::size_t t = 0; t < samples; ++t) {
        Word y = random_nf();
        auto deg1 = factor_basis(genus, 1);
        check_id2(y, deg1[rng.below(deg1.size())]);
    }
    for (const Word& y : adversarial_suffix_words(genus, 4)) check_id2(y, sym_beta(genus));

    IdentityCheck id3{"s_1 d_2 = id", 0, 0};
    auto check_id3 = [&](const Word& y) {
        ChainElement x = chain_term(genus, y, sym_omega());
        ++id3.samples;
        if (!(s1(d2(x)) == x)) ++id3.violations;
    };
    for (std::size_t t = 0; t < samples; ++t) check_id3(random_nf());
    for (const Word& y : adversarial_suffix_words(genus, 4)) check_id3(y);

    rep.identities = {id0, id1, id2, id3};
    return rep;
}

struct TensorHomotopyReport {
    std::vector<int> genera;
    std::uint64_t seed = 0;
    IdentityCheck u_identity{"d u + u d = id - (u_{-1} eps)", 0, 0};
    IdentityCheck w_identity{"d w + w d = id - (w_{-1} eps)", 0, 0};

    [[nodiscard]] bool all_zero() const {
        return u_identity.violations == 0 && w_identity.violations == 0;
    }
};

// Contracting-homotopy equations for u on M^{g_1..g_n} and w on its tensor
// square, on pseudo-random basis elements of every degree.
inline TensorHomotopyReport verify_tensor_homotopy(const std::vector<int>& genera,
                                                   std::size_t samples_per_degree,
                                                   std::size_t max_len, std::uint64_t seed) {
    TensorHomotopyReport rep;
    rep.genera = genera;
    rep.seed = seed;
    Sampler rng(seed);
    const std::size_t n = genera.size();

    auto random_element = [&](const std::vector<int>& gs, int degree) {
        auto basis = basis_of(gs, degree);
        const TensorSymbol& sym = basis[rng.below(basis.size())];
        std::vector<Word> words;
        for (int g : gs) words.push_back(normal_form(rng.random_word(g, max_len)));
        ChainElement e(gs, degree);
        e.add_term(std::move(words), sym, 1);
        return e;
    };

    for (int degree = 0; degree <= 2 * static_cast<int>(n); ++degree) {
        for (std::size_t t = 0; t < samples_per_degree; ++t) {
            ChainElement x = random_element(genera, degree);
            ChainElement lhs = tensor_differential(homotopy_u(x));
            if (degree > 0) lhs += homotopy_u(tensor_differential(x));
            ChainElement rhs = x;
            if (degree == 0) {
                ChainElement unit = homotopy_unit(genera);
                unit.scale(x.augmentation());
                rhs -= unit;
            }
            ++rep.u_identity.samples;
            if (!(lhs == rhs)) ++rep.u_identity.violations;
        }
    }

    std::vector<int> doubled = genera;
    doubled.insert(doubled.end(), genera.begin(), genera.end());
    for (int degree = 0; degree <= 4 * static_cast<int>(n); ++degree) {
        for (std::size_t t = 0; t < samples_per_degree; ++t) {
            ChainElement x = random_element(doubled, degree);
            ChainElement lhs = tensor_differential(homotopy_w(x, n));
            if (degree > 0) lhs += homotopy_w(tensor_differential(x), n);
            ChainElement rhs = x;
            if (degree == 0) {
                ChainElement unit = homotopy_unit(doubled);
                unit.scale(x.augmentation());
                rhs -= unit;
            }
            ++rep.w_identity.samples;
            if (!(lhs == rhs)) ++rep.w_identity.violations;
        }
    }
    return rep;
}

}  // namespace surfcoh
