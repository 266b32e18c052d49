#include <catch2/catch_amalgamated.hpp>

#include "surfcoh/diagonal.hpp"
#include "surfcoh/sampling.hpp"

using namespace surfcoh;

namespace {
Word W(const std::string& s, int g) { return parse_word(s, g); }

// (augmentation (x) id) and (id (x) augmentation) of an element of the doubled complex.
ChainElement counit_side(const ChainElement& x, std::size_t n, bool keep_right) {
    std::vector<int> half(x.genera().begin() + (keep_right ? static_cast<std::ptrdiff_t>(n) : 0),
                          x.genera().begin() + (keep_right ? static_cast<std::ptrdiff_t>(2 * n)
                                                           : static_cast<std::ptrdiff_t>(n)));
    ChainElement r(half, x.degree());
    for (const auto& [k, c] : x.terms()) {
        std::size_t dead_begin = keep_right ? 0 : n;
        bool killed = false;
        for (std::size_t j = dead_begin; j < dead_begin + n; ++j)
            if (!(k.symbol.factors[j] == sym_chi())) killed = true;
        if (killed) continue;
        std::size_t keep_begin = keep_right ? n : 0;
        std::vector<Word> words(k.words.begin() + static_cast<std::ptrdiff_t>(keep_begin),
                                k.words.begin() + static_cast<std::ptrdiff_t>(keep_begin + n));
        std::vector<BasisSymbol> syms(k.symbol.factors.begin() + static_cast<std::ptrdiff_t>(keep_begin),
                                      k.symbol.factors.begin() + static_cast<std::ptrdiff_t>(keep_begin + n));
        r.add_term(std::move(words), TensorSymbol(std::move(syms)), c);
    }
    return r;
}
}  // namespace

TEST_CASE("closed-form diagonal in low degree", "[diagonal]") {
    ChainElement dchi = diagonal_closed_form(sym_chi(), 2);
    CHECK(dchi == ChainElement::basis({2, 2}, TensorSymbol({sym_chi(), sym_chi()})));

    for (int g : {2, 3}) {
        for (int i = 1; i <= g; ++i) {
            ChainElement da = diagonal_closed_form(sym_alpha(i), g);
            ChainElement expect_a({g, g}, 1);
            expect_a.add_term({W("1", g), single_letter_word(g, gen_a(i))},
                              TensorSymbol({sym_alpha(i), sym_chi()}), 1);
            expect_a.add_term({W("1", g), W("1", g)}, TensorSymbol({sym_chi(), sym_alpha(i)}), 1);
            CHECK(da == expect_a);

            ChainElement db = diagonal_closed_form(sym_beta(i), g);
            ChainElement expect_b({g, g}, 1);
            expect_b.add_term({W("1", g), single_letter_word(g, gen_b(i))},
                              TensorSymbol({sym_beta(i), sym_chi()}), 1);
            expect_b.add_term({W("1", g), W("1", g)}, TensorSymbol({sym_chi(), sym_beta(i)}), 1);
            CHECK(db == expect_b);
        }
    }
}

TEST_CASE("closed-form diagonal of omega: pinned coefficients", "[diagonal]") {
    for (int g : {2, 3}) {
        ChainElement d = diagonal_closed_form(sym_omega(), g);
        Int c_omega_right = 0, c_omega_left = 0, c_alpha_beta = 0;
        for (const auto& [k, c] : d.terms()) {
            if (k.symbol == TensorSymbol({sym_chi(), sym_omega()}) &&
                k.words[0] == Word::identity(g) && k.words[1] == Word::identity(g))
                c_omega_right = c;
            if (k.symbol == TensorSymbol({sym_omega(), sym_chi()}) &&
                k.words[1] == W("b" + std::to_string(g) + "a" + std::to_string(g), g))
                c_omega_left = c;
            if (g == 2 && k.symbol == TensorSymbol({sym_alpha(1), sym_beta(1)}) &&
                k.words[0] == Word::identity(g) && k.words[1] == W("a1", g))
                c_alpha_beta = c;
        }
        CHECK(c_omega_right == 1);  // + chi (x) omega
        CHECK(c_omega_left == 1);   // + omega (x) b_g a_g chi
        if (g == 2) CHECK(c_alpha_beta == 1);  // P_0 alpha_1 (x) P_0 a_1 beta_1
    }
}

TEST_CASE("generic lift reproduces the closed form", "[diagonal][oracle]") {
    for (int g : {2, 3}) {
        std::vector<BasisSymbol> all{sym_chi(), sym_omega()};
        for (int i = 1; i <= g; ++i) {
            all.push_back(sym_alpha(i));
            all.push_back(sym_beta(i));
        }
        for (const BasisSymbol& b : all) {
            ChainElement generic = diagonal_generic_basis({g}, TensorSymbol({b}));
            ChainElement closed = diagonal_closed_form(b, g);
            INFO("genus " << g << " symbol " << format_symbol(b));
            CHECK(generic == closed);
        }
    }
}

TEST_CASE("diagonal counit", "[diagonal]") {
    for (int g : {2, 3}) {
        for (int k = 0; k <= 2; ++k)
            for (const TensorSymbol& s : basis_of({g}, k)) {
                ChainElement d = diagonal_closed_form(s.factors[0], g);
                ChainElement b = ChainElement::basis({g}, s);
                CHECK(counit_side(d, 1, true) == b);
                CHECK(counit_side(d, 1, false) == b);
            }
    }
    // two-factor shuffle
    for (int k = 0; k <= 4; ++k)
        for (const TensorSymbol& s : basis_of({2, 3}, k)) {
            ChainElement d = shuffle_diagonal(s, {2, 3});
            ChainElement b = ChainElement::basis({2, 3}, s);
            CHECK(counit_side(d, 2, true) == b);
            CHECK(counit_side(d, 2, false) == b);
        }
}

TEST_CASE("diagonal is a chain map", "[diagonal]") {
    for (int g : {2, 3}) {
        for (int k = 1; k <= 2; ++k)
            for (const TensorSymbol& s : basis_of({g}, k)) {
                ChainElement x = ChainElement::basis({g}, s);
                CHECK(tensor_differential(diagonal_single(x)) ==
                      diagonal_single(tensor_differential(x)));
            }
    }
    for (int k = 1; k <= 4; ++k)
        for (const TensorSymbol& s : basis_of({2, 2}, k)) {
            ChainElement x = ChainElement::basis({2, 2}, s);
            CHECK(tensor_differential(shuffle_diagonal(x)) ==
                  shuffle_diagonal(tensor_differential(x)));
        }
    // the generic lift is a chain map for two factors as well
    for (int k = 1; k <= 4; ++k)
        for (const TensorSymbol& s : basis_of({2, 2}, k)) {
            ChainElement x = ChainElement::basis({2, 2}, s);
            CHECK(tensor_differential(diagonal_generic(x)) ==
                  diagonal_generic(tensor_differential(x)));
        }
}

TEST_CASE("diagonal equivariance", "[diagonal]") {
    Sampler rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        int g = 2 + static_cast<int>(rng.below(2));
        auto basis = basis_of({g}, static_cast<int>(rng.below(3)));
        const TensorSymbol& s = basis[rng.below(basis.size())];
        Word y = rng.random_word(g, 8);
        ChainElement x = ChainElement::basis({g}, s);
        CHECK(diagonal_single(x.acted_by({y})) == diagonal_single(x).acted_by({y, y}));
    }
}

TEST_CASE("shuffled diagonal examples", "[diagonal]") {
    // chi (x) chi -> (chi (x) chi) (x) (chi (x) chi)
    ChainElement d0 = shuffle_diagonal(TensorSymbol({sym_chi(), sym_chi()}), {2, 2});
    CHECK(d0 == ChainElement::basis({2, 2, 2, 2},
                                    TensorSymbol({sym_chi(), sym_chi(), sym_chi(), sym_chi()})));

    // alpha_1 (x) chi -> (alpha_1 (x) chi) (x) (a_1 chi (x) chi) + (chi (x) chi) (x) (alpha_1 (x) chi)
    ChainElement d1e = shuffle_diagonal(TensorSymbol({sym_alpha(1), sym_chi()}), {2, 2});
    ChainElement expect({2, 2, 2, 2}, 1);
    expect.add_term({W("1", 2), W("1", 2), W("a1", 2), W("1", 2)},
                    TensorSymbol({sym_alpha(1), sym_chi(), sym_chi(), sym_chi()}), 1);
    expect.add_term({W("1", 2), W("1", 2), W("1", 2), W("1", 2)},
                    TensorSymbol({sym_chi(), sym_chi(), sym_alpha(1), sym_chi()}), 1);
    CHECK(d1e == expect);

    // a T-swap of two degree-1 pieces flips the sign:
    // the (chi (x) alpha_1)(x)(beta_1 (x) b_1 chi) pairing inside
    // Delta(alpha_1 (x) beta_1) acquires coefficient -1
    ChainElement d2e = shuffle_diagonal(TensorSymbol({sym_alpha(1), sym_beta(1)}), {2, 2});
    Int swapped = 0;
    for (const auto& [k, c] : d2e.terms())
        if (k.symbol == TensorSymbol({sym_chi(), sym_beta(1), sym_alpha(1), sym_chi()}))
            swapped = c;
    CHECK(swapped == -1);
}
