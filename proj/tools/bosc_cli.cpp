// bosc: command-line front end for the bounded-oscillation toolkit.
//
// Exit codes: 0 positive verdict or success, 1 negative verdict,
// 2 usage or parse error, 3 an enumeration bound was hit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bosc/bosc.hpp"

using namespace bosc;

namespace {

enum Exit { kPositive = 0, kNegative = 1, kUsage = 2, kBound = 3 };

struct Options {
    bool machine = false;
    std::size_t max_moves = 64;
    std::size_t max_len = 4;
};

// key=value lines in machine mode, "key: value" otherwise.
class Out {
public:
    explicit Out(bool machine) : machine_(machine) {}
    void kv(const std::string& k, const std::string& v) const {
        std::cout << k << (machine_ ? "=" : ": ") << v << '\n';
    }
    template <class T>
    void kv(const std::string& k, const T& v) const {
        kv(k, std::to_string(v));
    }
    void record(const std::vector<std::pair<std::string, std::string>>& fields) const {
        for (std::size_t i = 0; i < fields.size(); ++i)
            std::cout << (i ? " " : "") << fields[i].first << (machine_ ? "=" : ": ") << fields[i].second;
        std::cout << '\n';
    }
    void human(const std::string& s) const {
        if (!machine_) std::cout << s;
    }
    bool machine() const { return machine_; }

private:
    bool machine_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string show_word(const Word& w) {
    if (w.empty()) return "_";
    bool spaced = false;
    for (const auto& s : w) spaced = spaced || s.size() > 1;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (spaced && i ? " " : "") + w[i];
    return out;
}

std::string show_set(const std::set<unsigned>& s) {
    std::string out;
    for (auto x : s) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out.empty() ? "none" : out;
}

Pda load_pda(const std::string& path) { return parse_pda(read_file(path)); }

// Reduces when needed and says so on stderr.
Pda reduced(const Pda& p, const std::string& path) {
    if (is_reduced(p)) return p;
    auto r = reduce_pipeline(p);
    std::cerr << "note: " << path << " is not in reduced form; reduced to " << r.actions.size() << " actions over "
              << r.stack_symbols.size() << " stack symbols\n";
    return r;
}

Word word_for(const Pda& p, const std::string& text) {
    if (text == "_" || text == "\xCE\xB5") return {};
    return tokenize_word(text, input_alphabet(p));
}

int cmd_rank(const Out& out, const std::string& arg) {
    auto text = arg.size() > 1 && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
    auto w = DyckWord::parse(text);
    out.kv("word", w.str());
    out.kv("rank", rank(w));
    out.kv("hat_rank", std::to_string(hat_rank(w)));
    out.kv("pairs", format_pairs(matching_pairs(w)));
    if (!out.machine() && !w.empty()) out.human(arc_diagram(w));
    return kPositive;
}

int cmd_tree(const Out& out, const std::string& grammar_path, const std::string& text, std::size_t max_nodes,
             std::size_t max_trees) {
    auto g = parse_grammar(read_file(grammar_path));
    Word w = text == "_" || text == "\xCE\xB5" ? Word{} : tokenize_word(text, g.terminals);
    for (const auto& s : w)
        if (!g.terminals.count(s)) throw Error("symbol '" + s + "' is not a terminal of the grammar");
    auto trees = parse_trees(g, w, max_nodes);
    bool cnf = is_cnf(g);
    out.kv("word", show_word(w));
    out.kv("trees", trees.size());
    if (trees.empty()) {
        out.kv("verdict", std::string("not-in-language"));
        return kNegative;
    }
    std::size_t violations = 0;
    for (std::size_t i = 0; i < trees.size() && i < max_trees; ++i) {
        auto m = metrics(trees[i]);
        std::string bounds = "n/a";
        if (cnf) {
            bool ok = m.oscillation <= m.dimension + 1 && m.dimension <= 2 * m.oscillation;
            violations += !ok;
            bounds = ok ? "ok" : "VIOLATED";
        }
        out.record({{"tree", std::to_string(i + 1)},
                    {"dimension", std::to_string(m.dimension)},
                    {"oscillation", std::to_string(m.oscillation)},
                    {"bounds", bounds},
                    {"footprint", m.footprint.str()}});
        out.human("  " + to_sexpr(trees[i]) + "\n");
    }
    if (trees.size() > max_trees) out.kv("trees_shown", max_trees);
    out.kv("verdict", std::string("in-language"));
    return violations ? kNegative : kPositive;
}

int cmd_run_osc(const Out& out, const Options& o, const std::string& path, const std::optional<std::string>& text) {
    auto p = load_pda(path);
    std::size_t runs = 0;
    std::set<unsigned> oscs;
    auto visit = [&](const RunView& v) {
        auto fp = footprint_of_moves(push_lengths(p, v.action_indices));
        auto osc = rank(fp);
        oscs.insert(osc);
        ++runs;
        out.record({{"run", std::to_string(runs)},
                    {"word", show_word(decode_word(p, v.word))},
                    {"oscillation", std::to_string(osc)},
                    {"max_height", std::to_string(v.max_height)},
                    {"footprint", fp.str()}});
    };
    bool hit = text ? for_each_run(p, encode_word(p, word_for(p, *text)), {o.max_moves, 0}, visit)
                    : for_each_run_up_to(p, o.max_len, {o.max_moves, 0}, visit);
    out.kv("runs", runs);
    out.kv("oscillations", show_set(oscs));
    out.kv("bound_hit", yes_no(hit));
    if (hit) std::cerr << "warning: the move bound " << o.max_moves << " was hit; the run list may be incomplete\n";
    return hit ? kBound : runs ? kPositive : kNegative;
}

int cmd_construct(const Out& out, const std::string& path, int k_arg, bool general, bool exact,
                  const std::optional<std::string>& dest) {
    if (k_arg < 0) throw CLI::ValidationError("-k", "k must be a natural number");
    if (general && exact) throw CLI::ValidationError("--general", "choose at most one of --general and --exact");
    auto k = static_cast<unsigned>(k_arg);
    auto p = load_pda(path);
    Pda result;
    std::string expected_actions = "n/a", expected_symbols = "n/a";
    if (general) {
        result = k_pda_general(p, k).pda;
        std::uint64_t want = 0;
        for (const auto& a : p.actions) {
            auto n = static_cast<unsigned>(a.push.size());
            want += n == 0 ? expected_action_count_general(1, 0, 0, 0, k)
                  : n == 1 ? expected_action_count_general(0, 1, 0, 0, k)
                           : expected_action_count_general(0, 0, 1, n, k);
        }
        expected_actions = std::to_string(want);
        expected_symbols = std::to_string(2 * p.stack_symbols.size() * (k + 1));
    } else {
        auto r = reduced(p, path);
        if (exact) {
            result = k_pda_exact(r, k).pda;
        } else {
            result = k_pda_reduced(r, k).pda;
            std::uint64_t pops = 0, pushes = 0;
            for (const auto& a : r.actions) (a.is_pop() ? pops : pushes)++;
            expected_actions = std::to_string(2 * pops + pushes * (2 * k * k + 3 * k));
            expected_symbols = std::to_string(2 * r.stack_symbols.size() * (k + 1));
        }
    }
    auto text = format_pda(result);
    // The PDA text goes to the file, or to stdout with the counts on stderr.
    if (dest) write_file(*dest, text);
    else std::cout << text;
    std::ostream& os = dest ? std::cout : std::cerr;
    const char* sep = out.machine() ? "=" : ": ";
    os << "k" << sep << k << '\n'
       << "actions" << sep << result.actions.size() << '\n'
       << "expected_actions" << sep << expected_actions << '\n'
       << "stack_symbols" << sep << result.stack_symbols.size() << '\n'
       << "expected_stack_symbols" << sep << expected_symbols << '\n';
    return kPositive;
}

int cmd_empty(const Out& out, const std::string& path, int k_arg, bool witness) {
    if (k_arg < 0) throw CLI::ValidationError("-k", "k must be a natural number");
    auto k = static_cast<unsigned>(k_arg);
    auto p = reduced(load_pda(path), path);
    bool nonempty = k_emptiness(p, k);
    out.kv("k", k);
    out.kv("verdict", std::string(nonempty ? "NONEMPTY" : "EMPTY"));
    if (nonempty && witness) {
        auto w = k_emptiness_witness(p, k);
        out.kv("witness_word", show_word(decode_word(p, w->word)));
        out.kv("witness_oscillation", w->oscillation);
        out.kv("witness_footprint", w->footprint.str());
        out.kv("witness_moves", w->run.actions.size());
        for (const auto& a : w->run.actions) out.human("  " + p.action_str(a) + "\n");
    }
    return nonempty ? kPositive : kNegative;
}

int cmd_member(const Out& out, const std::string& path, int k_arg, const std::string& text) {
    if (k_arg < 0) throw CLI::ValidationError("-k", "k must be a natural number");
    auto k = static_cast<unsigned>(k_arg);
    auto p = reduced(load_pda(path), path);
    auto w = word_for(p, text);
    auto oscs = oscillations_on(p, encode_word(p, w), k);
    bool member = oscs.count(k) > 0;
    out.kv("k", k);
    out.kv("word", show_word(w));
    out.kv("oscillations_up_to_k", show_set(oscs));
    out.kv("verdict", std::string(member ? "MEMBER" : "NONMEMBER"));
    return member ? kPositive : kNegative;
}

int cmd_path(const Out& out, const std::string& path, bool emit) {
    auto g = parse_graph(read_file(path));
    auto p = path_to_pda(g);
    bool reach = reachable(g);
    bool empty = is_empty(p);
    if (emit) {
        std::cout << format_pda(p);
        return reach ? kPositive : kNegative;
    }
    out.kv("nodes", g.nodes.size());
    out.kv("edges", g.edges.size());
    out.kv("reachable", yes_no(reach));
    out.kv("pda_empty", yes_no(empty));
    if (reach == empty) throw Error("internal: reduction disagrees with reachability");
    return reach ? kPositive : kNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded-oscillation toolkit: Dyck ranks, tree dimension, oscillating PDAs and their decision problems"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--machine", o.machine, "Print key=value records");
    app.add_option("--max-moves", o.max_moves, "Move bound for run enumeration")->check(CLI::PositiveNumber);
    app.add_option("--max-len", o.max_len, "Word length bound when enumerating words");

    std::string a1, a2, word;
    std::optional<std::string> opt_word, dest;
    int k = -1;
    bool general = false, exact = false, witness = false, emit = false;
    std::size_t max_nodes = 64, max_trees = 100;

    auto* rank = app.add_subcommand("rank", "Rank, hat-rank and matching pairs of a Dyck word ('@file' reads a file)");
    rank->add_option("word", a1, "Dyck word over ( ) or ā a")->required();

    auto* tree = app.add_subcommand("tree", "Dimension and oscillation of the parse trees of a word");
    tree->add_option("grammar", a1, "Grammar file")->required()->check(CLI::ExistingFile);
    tree->add_option("word", word, "Word ('_' for the empty word)")->required();
    tree->add_option("--max-nodes", max_nodes, "Node bound for parse trees");
    tree->add_option("--max-trees", max_trees, "Number of trees printed");

    auto* run_osc = app.add_subcommand("run-osc", "Oscillation of every bounded run (on one word or all words up to --max-len)");
    run_osc->add_option("pda", a1, "PDA file")->required()->check(CLI::ExistingFile);
    run_osc->add_option("-w,--word", opt_word, "Input word ('_' for the empty word)");

    auto* cfg2pda = app.add_subcommand("cfg2pda", "One-state PDA simulating leftmost derivations of a grammar");
    cfg2pda->add_option("grammar", a1, "Grammar file")->required()->check(CLI::ExistingFile);

    auto* reduce = app.add_subcommand("reduce", "Bring a PDA to reduced form");
    reduce->add_option("pda", a1, "PDA file")->required()->check(CLI::ExistingFile);

    auto* construct = app.add_subcommand("construct", "Build the k-oscillating PDA");
    construct->add_option("pda", a1, "PDA file")->required()->check(CLI::ExistingFile);
    construct->add_option("-k", k, "Oscillation")->required();
    construct->add_flag("--general", general, "Annotate the PDA as given, without reduction");
    construct->add_flag("--exact", exact, "Use oscillation-class annotations (complete)");
    construct->add_option("-o,--output", dest, "Write the PDA here and the counts to stdout");

    auto* empty = app.add_subcommand("empty", "Is there a run of oscillation exactly k?");
    empty->add_option("pda", a1, "PDA file")->required()->check(CLI::ExistingFile);
    empty->add_option("-k", k, "Oscillation")->required();
    empty->add_flag("--witness", witness, "Print a witnessing run");

    auto* member = app.add_subcommand("member", "Is the word accepted by a run of oscillation exactly k?");
    member->add_option("pda", a1, "PDA file")->required()->check(CLI::ExistingFile);
    member->add_option("-k", k, "Oscillation")->required();
    member->add_option("-w,--word", word, "Input word ('_' for the empty word)")->required();

    auto* onion = app.add_subcommand("union", "Union of two PDAs, in reduced form");
    onion->add_option("first", a1, "PDA file")->required()->check(CLI::ExistingFile);
    onion->add_option("second", a2, "PDA file")->required()->check(CLI::ExistingFile);

    auto* path = app.add_subcommand("path", "Reachability through the PDA emptiness reduction");
    path->add_option("graph", a1, "Graph file")->required()->check(CLI::ExistingFile);
    path->add_flag("--emit-pda", emit, "Print the constructed PDA instead of the verdicts");

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Out out(o.machine);
    try {
        if (*rank) return cmd_rank(out, a1);
        if (*tree) return cmd_tree(out, a1, word, max_nodes, max_trees);
        if (*run_osc) return cmd_run_osc(out, o, a1, opt_word);
        if (*cfg2pda) {
            std::cout << format_pda(cfg_to_pda(parse_grammar(read_file(a1))));
            return kPositive;
        }
        if (*reduce) {
            std::cout << format_pda(ensure_reduced(load_pda(a1)));
            return kPositive;
        }
        if (*construct) return cmd_construct(out, a1, k, general, exact, dest);
        if (*empty) return cmd_empty(out, a1, k, witness);
        if (*member) return cmd_member(out, a1, k, word);
        if (*onion) {
            std::cout << format_pda(union_pda(reduced(load_pda(a1), a1), reduced(load_pda(a2), a2)));
            return kPositive;
        }
        if (*path) return cmd_path(out, a1, emit);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << '\n';
        return kBound;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
