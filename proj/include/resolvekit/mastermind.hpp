#pragma once

// Nonadaptive Mastermind with only black-peg answers: a(x, y) counts the
// positions where x and y agree. On K_q the distance sum between x and y is
// n - a(x, y), so the rows of a K_q code are a fixed question list from which
// any secret can be decoded.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "resolvekit/codec.hpp"
#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/distance.hpp"
#include "resolvekit/graphs/generators.hpp"
#include "resolvekit/witness.hpp"

namespace resolvekit::mastermind {

using codec::Word;

/// Code over K_q with the complete-graph witness and radix q.
inline codec::Code make_code(int q, std::size_t n) {
    const auto m = graphs::distance_matrix(graphs::complete(q)).m;
    const auto info = witness::validate(m, witness::named_witness(witness::Family::complete, q));
    return codec::build(codec::plan(m, info, info.r_w, n));
}

inline int answer(const Word& secret, const Word& question) {
    int hits = 0;
    for (std::size_t i = 0; i < secret.size(); ++i) hits += secret[i] == question[i];
    return hits;
}

struct Transcript {
    std::vector<Word> questions;
    std::vector<int> answers;
    Word recovered;
};

inline Transcript play(const codec::Code& code, const Word& secret) {
    if (secret.size() != code.columns()) throw InvalidArgument("mastermind: secret length does not match n");
    Transcript t;
    t.questions = codec::row_queries(code);
    std::vector<std::int64_t> distances;
    for (const Word& question : t.questions) {
        const int a = answer(secret, question);
        t.answers.push_back(a);
        distances.push_back(static_cast<std::int64_t>(secret.size()) - a);
    }
    t.recovered = codec::decode(code, distances);
    return t;
}

}  // namespace resolvekit::mastermind
