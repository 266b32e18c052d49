#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "surfcoh/word.hpp"

namespace surfcoh {

// Deterministic sampler for verification harnesses: mt19937_64 + modulo
// reduction, so streams are identical across platforms for a fixed seed.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

    bool coin() { return (rng_() & 1u) != 0; }

    Letter random_letter(int genus) {
        Letter l;
        l.kind = coin() ? 'a' : 'b';
        l.index = 1 + static_cast<int>(below(static_cast<std::uint64_t>(genus)));
        l.inverted = coin();
        return l;
    }

    // Uniform length in 0..max_len, letters uniform over the signed alphabet.
    Word random_word(int genus, std::size_t max_len) {
        std::size_t len = static_cast<std::size_t>(below(max_len + 1));
        std::vector<Letter> ls;
        ls.reserve(len);
        for (std::size_t i = 0; i < len; ++i) ls.push_back(random_letter(genus));
        return Word(genus, std::move(ls));
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace surfcoh
