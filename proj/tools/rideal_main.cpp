// rideal: decide the ideal-theoretic structure of regular languages and run
// the automaton constructions behind those decisions.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rideal/json_io.hpp"
#include "rideal/ranker.hpp"

namespace {

using namespace rideal;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct CommonOptions {
    std::string input_file;
    std::string regex;
    std::string alphabet;
    std::string format = "json";
    std::string output;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_input = true) {
    if (with_input) {
        cmd->add_option("input", opt.input_file, "input automaton JSON file");
        cmd->add_option("--regex", opt.regex, "inline regular expression input");
        cmd->add_option("--alphabet", opt.alphabet, "alphabet letters, e.g. abc");
    }
    cmd->add_option("--format", opt.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", opt.output, "write output to a file instead of stdout");
    cmd->add_flag("--quiet", opt.quiet, "emit the verdict only");
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.output);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const CommonOptions& opt, const json& j) { emit(opt, j.dump(2)); }

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

enum class InputKind { Regex, OneWay, TwoWay, StaigerWagner };

struct Input {
    InputKind kind;
    std::string source;
    Nfa nfa;                            // language view (all kinds)
    std::optional<Dfa> dfa;             // when the file holds a DFA
    std::optional<TwoWayAutomaton> two_way;
};

Input load_input(const CommonOptions& opt) {
    bool has_regex = !opt.regex.empty();
    bool has_file = !opt.input_file.empty();
    if (has_regex == has_file)
        throw std::runtime_error("expected exactly one input source (--regex or a file)");

    Input in;
    if (has_regex) {
        if (opt.alphabet.empty())
            throw std::runtime_error("--regex requires --alphabet");
        in.kind = InputKind::Regex;
        in.source = "regex:" + opt.regex;
        in.nfa = parse_regex(opt.regex, Alphabet(opt.alphabet));
        return in;
    }

    json j = load_json_file(opt.input_file);
    in.source = "file:" + opt.input_file;
    if (j.contains("right_states")) {
        in.kind = InputKind::TwoWay;
        in.two_way = two_way_from_json(j);
        auto issues = validate(*in.two_way);
        if (!issues.empty())
            throw std::runtime_error("invalid two-way automaton: " + issues.front());
        in.nfa = to_nfa(to_one_way_dfa(*in.two_way));
        return in;
    }
    if (j.contains("table")) {
        in.kind = InputKind::StaigerWagner;
        in.nfa = sw_to_nfa(sw_from_json(j));
        return in;
    }
    in.kind = InputKind::OneWay;
    in.nfa = nfa_from_json(j);
    bool deterministic = in.nfa.initial.size() <= 1;
    for (std::size_t q = 0; deterministic && q < in.nfa.state_count(); ++q)
        for (const auto& succ : in.nfa.next[q]) deterministic = deterministic && succ.size() <= 1;
    if (deterministic) in.dfa = dfa_from_json(j);
    return in;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const CommonOptions& opt, std::size_t max_len, bool emit_monoid) {
    Input in = load_input(opt);
    ClassifyOptions options;
    options.oracle_max_len = max_len;
    ClassificationReport report = classify(in.nfa, in.source, options);

    if (opt.quiet) return kExitTrue;
    if (opt.format == "text") {
        std::ostringstream os;
        os << "language: " << report.source << " (minimal dfa: " << report.minimal_dfa_states
           << " states)\n";
        for (LanguageProperty p : kAllProperties) {
            const auto& entry = report.properties.at(property_name(p));
            os << "  " << property_name(p) << ": " << yes_no(entry.verdict) << "  ["
               << entry.route << "; " << entry.evidence << "]\n";
        }
        emit(opt, os.str());
        return kExitTrue;
    }
    json j = to_json(report);
    if (emit_monoid) {
        auto [m, p] = transition_monoid(to_minimal_dfa(in.nfa));
        j["monoid"] = monoid_to_json(m, p, green_classes(m));
    }
    emit_json(opt, j);
    return kExitTrue;
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

int run_convert(const CommonOptions& opt, const std::string& target) {
    Input in = load_input(opt);
    auto as_dfa = [&]() -> Dfa {
        if (in.dfa) return *in.dfa;
        return to_minimal_dfa(in.nfa);  // canonicalize nondeterministic inputs
    };

    if (target == "min-dfa") {
        emit_json(opt, to_json(to_minimal_dfa(in.nfa)));
    } else if (target == "staiger-wagner") {
        emit_json(opt, to_json(to_staiger_wagner(in.nfa)));
    } else if (target == "weak-nfa") {
        emit_json(opt, to_json(nfa_to_weak(in.nfa)));
    } else if (target == "flip-union") {
        emit_json(opt, to_json(weak_to_flip_union(as_dfa())));
    } else if (target == "bc-decomposition") {
        auto pairs = bc_decomposition(complete(as_dfa()));
        json j = json::array();
        for (const auto& [upper, strict] : pairs)
            j.push_back({{"upper", to_json(upper)}, {"strict", to_json(strict)}});
        emit_json(opt, j);
    } else if (target == "one-way") {
        if (!in.two_way) throw std::runtime_error("convert --to one-way requires a two-way input");
        emit_json(opt, to_json(to_one_way_dfa(*in.two_way)));
    } else {
        throw std::runtime_error("unknown conversion target: " + target);
    }
    return kExitTrue;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int run_check(const CommonOptions& opt, const std::string& name, const std::string& expr,
              const std::string& mode, unsigned max_n, std::size_t max_image) {
    if (name.empty() == expr.empty())
        throw std::runtime_error("expected exactly one of --identity or --identity-expr");
    LatticeIdentity id;
    if (!name.empty()) {
        const LatticeIdentity* found = find_catalog_identity(name);
        if (!found) {
            std::string known;
            for (const auto& cat : identity_catalog()) known += " " + cat.name;
            throw std::runtime_error("unknown identity '" + name + "'; known:" + known);
        }
        id = *found;
    } else {
        id = parse_identity(expr);
    }

    Input in = load_input(opt);
    Dfa language = to_minimal_dfa(in.nfa);
    WordsModeBounds bounds;
    bounds.max_n = max_n;
    bounds.max_image_len = max_image;
    IdentityCheckResult res =
        mode == "monoid" ? check_identity_monoid(language, id)
                         : check_identity_words(language, id, bounds);

    if (opt.quiet) {
        emit(opt, res.holds ? "true" : "false");
        return res.holds ? kExitTrue : kExitFalse;
    }
    if (opt.format == "text") {
        std::ostringstream os;
        os << "identity " << (id.name.empty() ? id.to_string() : id.name) << " ["
           << mode << "]: " << (res.holds ? "holds" : "fails") << "\n";
        for (const auto& [v, w] : res.counterexample)
            os << "  " << v << " = \"" << w << "\"\n";
        emit(opt, os.str());
    } else {
        json j;
        j["identity"] = id.to_string();
        if (!id.name.empty()) j["name"] = id.name;
        j["mode"] = mode;
        j["holds"] = res.holds;
        if (!res.holds) {
            json ce;
            for (const auto& [v, w] : res.counterexample) ce[std::string(1, v)] = w;
            j["counterexample"] = ce;
            if (mode == "words") j["n"] = res.counterexample_n;
        }
        emit_json(opt, j);
    }
    return res.holds ? kExitTrue : kExitFalse;
}

// ---------------------------------------------------------------------------
// simulate / ranker / monomials / oracle
// ---------------------------------------------------------------------------

int run_simulate(const CommonOptions& opt, const std::string& word) {
    Input in = load_input(opt);
    if (!in.two_way) throw std::runtime_error("simulate requires a two-way automaton input");
    RunResult run = simulate(*in.two_way, word);
    if (opt.quiet) {
        emit(opt, run.accepted() ? "true" : "false");
    } else if (opt.format == "text") {
        std::ostringstream os;
        os << "word \"" << word << "\": "
           << (run.outcome == RunOutcome::Accept   ? "accept"
               : run.outcome == RunOutcome::Reject ? "reject"
               : run.outcome == RunOutcome::Loop   ? "loop"
                                                   : "stuck")
           << " after " << run.trace.size() << " configurations\n";
        emit(opt, os.str());
    } else {
        json j = to_json(run);
        j["word"] = word;
        emit_json(opt, j);
    }
    return run.accepted() ? kExitTrue : kExitFalse;
}

int run_ranker(const CommonOptions& opt, const std::string& eval_expr,
               const std::string& compile_expr, const std::string& word) {
    if (eval_expr.empty() == compile_expr.empty())
        throw std::runtime_error("expected exactly one of --eval or --compile");
    if (opt.alphabet.empty()) throw std::runtime_error("ranker requires --alphabet");
    Alphabet alphabet(opt.alphabet);

    if (!compile_expr.empty()) {
        Ranker r = parse_ranker(compile_expr, alphabet);
        emit_json(opt, to_json(compile_ranker(r, alphabet)));
        return kExitTrue;
    }
    Ranker r = parse_ranker(eval_expr, alphabet);
    auto pos = eval_ranker(r, word);
    if (opt.quiet) {
        emit(opt, pos ? std::to_string(*pos) : "undefined");
    } else if (opt.format == "text") {
        emit(opt, r.to_string() + "(\"" + word + "\") = " +
                      (pos ? std::to_string(*pos) : "undefined"));
    } else {
        json j;
        j["ranker"] = r.to_string();
        j["word"] = word;
        if (pos) j["position"] = *pos;
        else j["position"] = nullptr;
        emit_json(opt, j);
    }
    return pos ? kExitTrue : kExitFalse;
}

int run_monomials(const CommonOptions& opt, std::size_t max_word_len) {
    Input in = load_input(opt);
    if (!in.two_way) throw std::runtime_error("monomials requires a two-way automaton input");
    MonomialExtraction extraction = extract_monomials(*in.two_way, max_word_len);
    if (opt.format == "text") {
        std::ostringstream os;
        for (const auto& p : extraction.monomials) os << p.to_string() << "\n";
        for (const auto& d : extraction.diagnostics) os << "# " << d << "\n";
        emit(opt, os.str());
    } else {
        json j;
        json monomials = json::array();
        for (const auto& p : extraction.monomials) monomials.push_back(to_json(p));
        j["alphabet"] = json::array();
        for (char c : in.two_way->alphabet.letters()) j["alphabet"].push_back(std::string(1, c));
        j["monomials"] = monomials;
        j["diagnostics"] = extraction.diagnostics;
        emit_json(opt, j);
    }
    return kExitTrue;
}

int run_oracle(const CommonOptions& opt, const std::string& property, std::size_t max_len) {
    auto prop = property_from_name(property);
    if (!prop) {
        std::string known;
        for (LanguageProperty p : kAllProperties) known += std::string(" ") + property_name(p);
        throw std::runtime_error("unknown property '" + property + "'; known:" + known);
    }
    Input in = load_input(opt);
    OracleResult res = brute_force_oracle(in.nfa, *prop, max_len);
    if (opt.quiet) {
        emit(opt, res.refuted() ? "refuted" : "consistent");
    } else if (opt.format == "text") {
        emit(opt, property + ": " + (res.refuted() ? "refuted: " + res.witness : "consistent up to length " + std::to_string(max_len)));
    } else {
        json j;
        j["property"] = property;
        j["max_len"] = max_len;
        j["outcome"] = res.refuted() ? "refuted" : "consistent";
        if (res.refuted()) j["witness"] = res.witness;
        emit_json(opt, j);
    }
    return res.refuted() ? kExitFalse : kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal-structure decisions and automaton constructions for regular languages"};
    app.require_subcommand(1);

    CommonOptions classify_opt;
    std::size_t classify_max_len = 8;
    bool emit_monoid = false;
    auto* cmd_classify = app.add_subcommand("classify", "full property report for a language");
    add_common(cmd_classify, classify_opt);
    cmd_classify->add_option("--max-len", classify_max_len, "word oracle length bound");
    cmd_classify->add_flag("--emit-monoid", emit_monoid, "include the syntactic monoid dump");

    CommonOptions convert_opt;
    std::string convert_target;
    auto* cmd_convert = app.add_subcommand("convert", "automaton model conversions");
    add_common(cmd_convert, convert_opt);
    cmd_convert
        ->add_option("--to", convert_target, "target model")
        ->required()
        ->check(CLI::IsMember({"min-dfa", "staiger-wagner", "flip-union", "weak-nfa",
                               "bc-decomposition", "one-way"}));

    CommonOptions check_opt;
    std::string check_name, check_expr, check_mode = "monoid";
    unsigned check_max_n = 4;
    std::size_t check_max_image = 2;
    auto* cmd_check = app.add_subcommand("check", "lattice identity check");
    add_common(cmd_check, check_opt);
    cmd_check->add_option("--identity", check_name, "catalog identity name");
    cmd_check->add_option("--identity-expr", check_expr, "identity expression, e.g. 'y => yz'");
    cmd_check->add_option("--mode", check_mode, "monoid (exact) or words (bounded oracle)")
        ->check(CLI::IsMember({"monoid", "words"}));
    cmd_check->add_option("--max-n", check_max_n, "words mode: largest n for n! expansion");
    cmd_check->add_option("--max-image", check_max_image, "words mode: variable image length bound");

    CommonOptions simulate_opt;
    std::string simulate_word;
    auto* cmd_simulate = app.add_subcommand("simulate", "run a two-way automaton on a word");
    add_common(cmd_simulate, simulate_opt);
    cmd_simulate->add_option("--word", simulate_word, "input word (may be empty)");

    CommonOptions ranker_opt;
    std::string ranker_eval, ranker_compile, ranker_word;
    auto* cmd_ranker = app.add_subcommand("ranker", "evaluate or compile rankers");
    add_common(cmd_ranker, ranker_opt, false);
    cmd_ranker->add_option("--alphabet", ranker_opt.alphabet, "alphabet letters");
    cmd_ranker->add_option("--eval", ranker_eval, "ranker to evaluate, e.g. 'Xa Yb Xc'");
    cmd_ranker->add_option("--compile", ranker_compile, "X-ranker to compile to a one-pass po2dfa");
    cmd_ranker->add_option("--word", ranker_word, "word for --eval");

    CommonOptions monomials_opt;
    bool extract = false;
    std::size_t max_word_len = 12;
    auto* cmd_monomials = app.add_subcommand("monomials", "unambiguous monomial extraction");
    add_common(cmd_monomials, monomials_opt);
    cmd_monomials->add_flag("--extract", extract, "extract monomials from a flip one-pass po2dfa");
    cmd_monomials->add_option("--max-word-len", max_word_len, "extraction word length cap");

    CommonOptions oracle_opt;
    std::string oracle_property;
    std::size_t oracle_max_len = 8;
    auto* cmd_oracle = app.add_subcommand("oracle", "bounded brute-force property oracle");
    add_common(cmd_oracle, oracle_opt);
    cmd_oracle->add_option("--property", oracle_property, "property name, e.g. right_ideal")
        ->required();
    cmd_oracle->add_option("--max-len", oracle_max_len, "word length bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitError;
    }

    try {
        if (cmd_classify->parsed()) return run_classify(classify_opt, classify_max_len, emit_monoid);
        if (cmd_convert->parsed()) return run_convert(convert_opt, convert_target);
        if (cmd_check->parsed())
            return run_check(check_opt, check_name, check_expr, check_mode, check_max_n,
                             check_max_image);
        if (cmd_simulate->parsed()) return run_simulate(simulate_opt, simulate_word);
        if (cmd_ranker->parsed())
            return run_ranker(ranker_opt, ranker_eval, ranker_compile, ranker_word);
        if (cmd_monomials->parsed()) {
            if (!extract) throw std::runtime_error("monomials requires --extract");
            return run_monomials(monomials_opt, max_word_len);
        }
        if (cmd_oracle->parsed()) return run_oracle(oracle_opt, oracle_property, oracle_max_len);
        throw std::runtime_error("no subcommand given");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
