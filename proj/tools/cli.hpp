#pragma once

// Command-line front end. run() is kept separate from main() so the tests
// can drive it with captured streams.
//
// Exit codes: 0 success, 1 usage, 2 invalid input, 3 inconsistent data,
// 4 resource cap exceeded.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resolvekit/analysis.hpp"
#include "resolvekit/codec.hpp"
#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/canonical.hpp"
#include "resolvekit/graphs/distance.hpp"
#include "resolvekit/graphs/enumerate.hpp"
#include "resolvekit/graphs/generators.hpp"
#include "resolvekit/graphs/graph6.hpp"
#include "resolvekit/mastermind.hpp"
#include "resolvekit/witness.hpp"

namespace resolvekit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kInconsistent = 3, kResource = 4 };

using exactmath::IntMatrix;
using exactmath::IntVector;

struct GraphSpec {
    std::string family;
    int q = 0;
    int q2 = 0;
    int clique = 0;
    std::string graph6;
    std::string file;
    std::string matrix;
};

struct Source {
    IntMatrix m;
    std::optional<graphs::Graph> graph;
    std::optional<witness::Family> named;  // closed-form witness for this family, if any
    int diam = 0;
};

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& text, const std::string& separators) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (separators.find(c) != std::string::npos) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

inline std::int64_t parse_int(const std::string& token, std::size_t offset) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + token + "'", offset);
    }
    if (used != token.size()) throw ParseError("expected an integer, got '" + token + "'", offset);
    return v;
}

/// "1 2 3", "1,2,3", or a bare digit string "123".
inline IntVector parse_vector(const std::string& text) {
    const bool separated = text.find_first_of(" ,\t") != std::string::npos || text.find('-') != std::string::npos;
    IntVector out;
    if (!separated) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') throw ParseError("expected a digit", i);
            out.push_back(text[i] - '0');
        }
        return out;
    }
    std::size_t index = 0;
    for (const auto& token : split_tokens(text, " ,\t")) out.push_back(parse_int(token, index++));
    return out;
}

/// Rows separated by ';', entries by spaces or commas.
inline IntMatrix parse_matrix(const std::string& text) {
    std::vector<IntVector> rows;
    std::size_t index = 0;
    for (const auto& row_text : split_tokens(text, ";")) {
        IntVector row;
        for (const auto& token : split_tokens(row_text, " ,\t")) row.push_back(parse_int(token, index++));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix", 0);
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw ParseError("matrix rows have different lengths", 0);
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

inline std::string join(const auto& values) {
    std::ostringstream os;
    bool first = true;
    for (const auto& v : values) {
        os << (first ? "" : " ") << v;
        first = false;
    }
    return os.str();
}

inline std::optional<witness::Family> named_family(const std::string& family, int q) {
    if (family == "complete") return witness::Family::complete;
    if (family == "path") return witness::Family::path;
    if (family == "cycle") return q % 2 == 0 ? witness::Family::even_cycle : witness::Family::odd_cycle;
    return std::nullopt;
}

inline graphs::Graph first_graph_in_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::optional<graphs::Graph> first;
    std::string line;
    while (!first && std::getline(in, line)) {
        std::string_view view(line);
        if (view.starts_with(graphs::kGraph6Header)) view.remove_prefix(graphs::kGraph6Header.size());
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        if (!view.empty()) first = graphs::parse_graph6(view);
    }
    if (!first) throw InvalidArgument("no graph in '" + path + "'");
    return *first;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::uint64_t env_cap(std::uint64_t fallback) {
    const char* text = std::getenv("RESOLVEKIT_CAP");
    if (text == nullptr || *text == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text, &end, 10);
    if (*end != '\0' || v == 0) throw InvalidArgument("RESOLVEKIT_CAP must be a positive integer");
    return v;
}

}  // namespace detail

inline Source load_source(const GraphSpec& spec, bool matrix_allowed = true) {
    const int given = !spec.family.empty() + !spec.graph6.empty() + !spec.file.empty() + !spec.matrix.empty();
    if (given != 1) throw InvalidArgument("give exactly one of --family, --graph6, --file, --matrix");
    Source out;
    if (!spec.matrix.empty()) {
        if (!matrix_allowed) throw InvalidArgument("this command needs a graph, not a matrix");
        out.m = detail::parse_matrix(spec.matrix);
        return out;
    }
    if (!spec.family.empty()) {
        if (spec.q <= 0) throw InvalidArgument("--family needs --q");
        const int second = spec.family == "complete-bipartite" ? spec.q2 : spec.clique;
        out.graph = graphs::by_family(spec.family, spec.q, second);
        out.named = detail::named_family(spec.family, spec.q);
    } else if (!spec.graph6.empty()) {
        out.graph = graphs::parse_graph6(spec.graph6);
    } else {
        out.graph = detail::first_graph_in_file(spec.file);
    }
    const auto d = graphs::distance_matrix(*out.graph);
    out.m = d.m;
    out.diam = d.diam;
    return out;
}

inline void add_source_options(CLI::App* cmd, GraphSpec& spec) {
    cmd->add_option("--family", spec.family, "complete | path | cycle | complete-bipartite | k-minus-clique");
    cmd->add_option("--q", spec.q, "number of vertices (first part size for complete-bipartite)");
    cmd->add_option("--q2", spec.q2, "second part size for complete-bipartite");
    cmd->add_option("--clique", spec.clique, "size of the removed clique for k-minus-clique");
    cmd->add_option("--graph6", spec.graph6, "graph in graph6 format");
    cmd->add_option("--file", spec.file, "file of graph6 records (the first one is used)");
    cmd->add_option("--matrix", spec.matrix, "integer matrix, rows separated by ';'");
}

/// Witness for a source: --w if given, else the family's closed form, else
/// statement3, else the best one in the box.
inline witness::WitnessInfo choose_witness(const Source& src, const std::string& w_text, std::int64_t box,
                                          std::uint64_t cap) {
    if (!w_text.empty()) return witness::validate(src.m, detail::parse_vector(w_text));
    if (src.named) return witness::validate(src.m, witness::named_witness(*src.named, static_cast<int>(src.m.cols())));
    return witness::default_witness(src.m, box, cap);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resolving sets of Cartesian powers of graphs"};
    app.require_subcommand(1);

    GraphSpec spec;
    std::string w_text;
    std::string word_text;
    std::string d_text;
    std::string code_path;
    std::string out_path;
    std::string secret_text;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cap_flag;
    std::int64_t box = 6;
    std::int64_t radix = 0;
    std::size_t n = 0;
    int enumerate_q = 0;
    int classes_q = 0;
    int diam = 0;
    bool oracle = false;
    bool include_disconnected = false;

    auto add_cap = [&](CLI::App* cmd) { cmd->add_option("--cap", cap_flag, "enumeration cap (overrides RESOLVEKIT_CAP)"); };

    auto* dist = app.add_subcommand("dist", "print the distance matrix and diameter");
    add_source_options(dist, spec);

    auto* wit = app.add_subcommand("witness", "witness analysis and bounds on r");
    add_source_options(wit, spec);
    wit->add_option("--w", w_text, "witness to validate, e.g. \"-1 0 1\"");
    wit->add_option("--box", box, "entry bound for witness searches")->check(CLI::PositiveNumber);
    wit->add_flag("--oracle", oracle, "also scan the whole box for arithmetic-progression witnesses");
    add_cap(wit);

    auto* code = app.add_subcommand("code", "build a resolving code and write its dump");
    add_source_options(code, spec);
    code->add_option("--n", n, "number of factors")->required()->check(CLI::PositiveNumber);
    code->add_option("--w", w_text, "witness override");
    code->add_option("--r", radix, "radix override (must exceed the witness ratio)");
    code->add_option("--box", box, "entry bound when a witness has to be searched")->check(CLI::PositiveNumber);
    code->add_option("--out", out_path, "write the dump here instead of stdout");
    add_cap(code);

    auto code_source = [&](CLI::App* cmd) {
        cmd->add_option("--code", code_path, "code dump from the code subcommand");
        cmd->add_option("--n", n, "build a code with this many factors instead of loading one")->check(CLI::PositiveNumber);
        cmd->add_option("--w", w_text, "witness override when building");
        cmd->add_option("--r", radix, "radix override when building");
    };

    auto* enc = app.add_subcommand("encode", "distances from a word to every query row");
    add_source_options(enc, spec);
    code_source(enc);
    enc->add_option("--word", word_text, "word in J order, e.g. 111 or \"1 1 1\"")->required();

    auto* dec = app.add_subcommand("decode", "recover a word from its distance vector");
    add_source_options(dec, spec);
    code_source(dec);
    dec->add_option("--d", d_text, "distance vector, e.g. \"2 2 2 1\"")->required();

    auto* ver = app.add_subcommand("verify", "check the identities of a code and that its rows resolve");
    add_source_options(ver, spec);
    code_source(ver);
    add_cap(ver);

    auto* cen = app.add_subcommand("census", "find graphs with no arithmetic-progression witness");
    cen->add_option("--file", spec.file, "graph6 file, one graph per line");
    cen->add_option("--enumerate", enumerate_q, "all labeled connected graphs on this many vertices (2..7)");
    cen->add_option("--classes", classes_q, "one graph per isomorphism class of connected graphs (2..10)");
    cen->add_option("--box", box, "entry bound for upper bounds on r")->check(CLI::PositiveNumber);
    add_cap(cen);

    auto* mm = app.add_subcommand("mastermind", "nonadaptive black-peg Mastermind");
    int mm_q = 0;
    mm->add_option("--q", mm_q, "number of colours")->required()->check(CLI::Range(2, 65535));
    mm->add_option("--n", n, "number of positions")->required()->check(CLI::PositiveNumber);
    mm->add_option("--secret", secret_text, "secret word, e.g. 111");
    mm->add_option("--random", seed, "draw the secret from this seed");

    auto* lb = app.add_subcommand("lb", "counting lower bound on the size of a resolving set");
    std::int64_t lb_q = 0;
    std::int64_t lb_n = 0;
    lb->add_option("--q", lb_q, "number of vertices")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
    lb->add_option("--diam", diam, "diameter")->required()->check(CLI::Range(1, 1 << 20));
    lb->add_option("--n", lb_n, "number of factors")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));

    auto* gen = app.add_subcommand("generate", "graph6 list of graphs up to isomorphism");
    int gen_q = 0;
    gen->add_option("--q", gen_q, "number of vertices")->required()->check(CLI::Range(1, graphs::kMaxCanonicalOrder));
    gen->add_flag("--all", include_disconnected, "include disconnected graphs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code_value = app.exit(e, out, err);
        return code_value == 0 ? kOk : kUsage;
    }

    try {
        const std::uint64_t box_cap = cap_flag ? *cap_flag : detail::env_cap(witness::kDefaultBoxCap);
        const std::uint64_t word_cap = cap_flag ? *cap_flag : detail::env_cap(analysis::kDefaultWordCap);

        auto make_code = [&](const Source& src) {
            if (!code_path.empty()) {
                if (n != 0 || !w_text.empty() || radix != 0) throw InvalidArgument("--code cannot be combined with --n, --w or --r");
                return codec::from_dump(codec::parse_dump(detail::read_file(code_path)), src.m);
            }
            if (n == 0) throw InvalidArgument("give --code or --n");
            const auto info = choose_witness(src, w_text, box, box_cap);
            return codec::build(codec::plan(src.m, info, radix != 0 ? radix : info.r_w, n));
        };

        if (*dist) {
            const Source src = load_source(spec, false);
            for (std::size_t r = 0; r < src.m.rows(); ++r) out << detail::join(src.m.row(r)) << '\n';
            out << "diam = " << src.diam << '\n';
        } else if (*wit) {
            const Source src = load_source(spec);
            out << "p = " << src.m.rows() << '\n' << "q = " << src.m.cols() << '\n';
            if (!w_text.empty()) {
                const auto info = witness::validate(src.m, detail::parse_vector(w_text));
                out << "witness " << detail::join(info.w) << " accepted\n";
                out << "Mw = " << detail::join(info.mw) << '\n';
                out << "g = " << info.g << '\n' << "ratio = " << info.ratio << '\n' << "r_w = " << info.r_w << '\n';
                out << "ap = " << (witness::ap_check(info) ? "yes" : "no") << '\n';
            }
            if (const auto s3 = witness::statement3(src.m)) {
                out << "statement3 = " << detail::join(s3->permutation) << '\n';
            } else {
                out << "statement3 = none\n";
            }
            const auto bound = witness::r_bound(src.m, box, box_cap);
            if (bound.best) out << "best witness " << detail::join(bound.best->w) << " ratio " << bound.best->ratio << '\n';
            if (bound.exact) {
                out << "r exact = " << *bound.exact << '\n';
            } else {
                out << "r in [" << bound.lower << ", " << bound.upper << "]\n";
            }
            if (oracle) {
                const bool none = analysis::appendix_oracle(src.m, box, box_cap);
                out << "ap witness in box " << box << " = " << (none ? "none" : "found") << '\n';
            }
        } else if (*code) {
            const Source src = load_source(spec);
            const auto info = choose_witness(src, w_text, box, box_cap);
            const auto built = codec::build(codec::plan(src.m, info, radix != 0 ? radix : info.r_w, n));
            const bool ok = codec::verify_identities(built);
            out << "witness " << detail::join(info.w) << '\n';
            out << "r = " << built.plan().r << '\n';
            out << "m+1 = " << built.rows() << '\n';
            out << "identities: " << (ok ? "ok" : "FAILED") << '\n';
            const std::string text = codec::format_dump(codec::to_dump(built));
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream file(out_path);
                if (!file) throw InvalidArgument("cannot write '" + out_path + "'");
                file << text;
            }
            if (!ok) return kInconsistent;
        } else if (*enc) {
            const Source src = load_source(spec);
            const auto c = make_code(src);
            const IntVector word = detail::parse_vector(word_text);
            out << detail::join(codec::encode(c, std::vector<int>(word.begin(), word.end()))) << '\n';
        } else if (*dec) {
            const Source src = load_source(spec);
            const auto c = make_code(src);
            const IntVector d = detail::parse_vector(d_text);
            out << detail::join(codec::decode(c, d)) << '\n';
        } else if (*ver) {
            const Source src = load_source(spec);
            const auto c = make_code(src);
            const bool ok = codec::verify_identities(c);
            out << "identities: " << (ok ? "ok" : "FAILED") << '\n';
            try {
                const bool resolving = analysis::is_resolving(src.m, codec::row_queries(c), c.columns(), word_cap);
                out << "resolving: " << (resolving ? "yes" : "no") << '\n';
                if (!resolving) return kInconsistent;
            } catch (const ResourceError&) {
                out << "resolving: skipped (word count above cap)\n";
            }
            if (!ok) return kInconsistent;
        } else if (*cen) {
            const int sources = !spec.file.empty() + (enumerate_q != 0) + (classes_q != 0);
            if (sources != 1) throw InvalidArgument("give exactly one of --file, --enumerate, --classes");
            analysis::CensusOptions options;
            options.box = cen->count("--box") ? box : 3;
            options.cap = box_cap;
            analysis::Census census(options);
            std::size_t index = 0;
            if (!spec.file.empty()) {
                std::ifstream in(spec.file);
                if (!in) throw InvalidArgument("cannot open '" + spec.file + "'");
                graphs::read_graph6_stream(in, [&](const graphs::Graph& g, std::size_t) { census.add(g, index++); });
            } else if (enumerate_q != 0) {
                graphs::enumerate_connected_labeled(enumerate_q, [&](const graphs::Graph& g, std::uint64_t) { census.add(g, index++); });
            } else {
                if (classes_q < 2 || classes_q > 10) throw InvalidArgument("--classes supports 2..10 vertices");
                for (std::uint64_t c : graphs::nonisomorphic_codes(classes_q, true))
                    census.add(graphs::graph_from_code(classes_q, c), index++);
            }
            const auto report = census.report();
            out << analysis::format_census(report);
            if (report.skipped_disconnected != 0) err << "skipped " << report.skipped_disconnected << " disconnected graphs\n";
        } else if (*mm) {
            if (secret_text.empty() == !seed.has_value()) throw InvalidArgument("give exactly one of --secret, --random");
            codec::Word secret;
            if (seed) {
                std::mt19937_64 rng(*seed);
                for (std::size_t i = 0; i < n; ++i) secret.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(mm_q)));
            } else {
                for (auto v : detail::parse_vector(secret_text)) {
                    if (v < 0 || v >= mm_q) throw InvalidArgument("secret symbol out of range");
                    secret.push_back(static_cast<int>(v));
                }
                if (secret.size() != n) throw InvalidArgument("secret length does not match --n");
            }
            const auto t = mastermind::play(mastermind::make_code(mm_q, n), secret);
            out << "secret " << detail::join(secret) << '\n';
            out << "questions " << t.questions.size() << '\n';
            for (std::size_t i = 0; i < t.questions.size(); ++i)
                out << "query " << detail::join(t.questions[i]) << " answer " << t.answers[i] << '\n';
            out << "answers " << detail::join(t.answers) << '\n';
            out << "recovered " << detail::join(t.recovered) << '\n';
            if (t.recovered != secret) return kInconsistent;
        } else if (*lb) {
            out << analysis::lower_bound(lb_q, diam, lb_n) << '\n';
        } else if (*gen) {
            for (std::uint64_t c : graphs::nonisomorphic_codes(gen_q, !include_disconnected))
                out << graphs::to_graph6(graphs::graph_from_code(gen_q, c)) << '\n';
        }
        return kOk;
    } catch (const InconsistentData& e) {
        err << "error: " << e.what() << '\n';
        return kInconsistent;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const NotConnected& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
}

}  // namespace resolvekit::cli
