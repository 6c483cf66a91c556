// pwcount: command-line front end. JSON output (--json) is canonical; text
// output is for people. Vertices, persons and rotations are 1-indexed on the
// command line and in every output, as in the input files.

#include "pwcount/clique_engine.hpp"
#include "pwcount/errors.hpp"
#include "pwcount/labeling_engine.hpp"
#include "pwcount/oracle.hpp"
#include "pwcount/stable_matching.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pwcount;
using json = nlohmann::json;

namespace {

// Bad flags or flag combinations that CLI11 cannot see; exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    std::optional<std::uint64_t> seed;
    std::optional<long> budget_ms;
    std::string decomp = "exact";
    std::string graph_path;
    std::string problem = "indep";
    std::vector<std::string> fixes;
    std::size_t samples = 1;
    std::string sampler = "fast";
    bool per_vertex = false;
    std::string instance_path;
    std::size_t n = 0, k = 0;
    int max_width = -1;
    std::string family;
    std::vector<std::size_t> sizes;
};

std::string read_input(const std::string &path) {
    if (path.empty())
        throw UsageError("missing input path");
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot read " + path);
    buf << in.rdbuf();
    return buf.str();
}

LabelingProblem problem_from(const std::string &spec) {
    if (spec == "indep")
        return independent_set();
    if (spec == "downset")
        return downset();
    if (spec.rfind("coloring:", 0) == 0) {
        const auto digits = spec.substr(9);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
            throw UsageError("--problem: bad alphabet size in `" + spec + "`");
        return coloring(static_cast<Label>(std::stoul(digits)));
    }
    if (spec.rfind("custom:", 0) == 0) {
        const auto path = spec.substr(7);
        return parse_problem(read_input(path), "custom:" + path);
    }
    throw UsageError("--problem: expected coloring:<c>, indep, downset or custom:<path>, got `" + spec + "`");
}

SearchBudget budget_from(const Options &opt) {
    SearchBudget budget;
    if (opt.budget_ms) {
        if (*opt.budget_ms <= 0)
            throw UsageError("--budget-ms must be positive");
        budget.max_time = std::chrono::milliseconds(*opt.budget_ms);
    }
    return budget;
}

json bags_json(const PathDecomposition &pd) {
    json bags = json::array();
    for (const auto &bag : pd.bags) {
        json b = json::array();
        for (auto v : bag)
            b.push_back(v + 1);
        bags.push_back(b);
    }
    return bags;
}

struct Decomposed {
    PathDecomposition pd;
    NicePathDecomposition npd;
    json echo;
};

Decomposed decompose(const Graph &g, const Options &opt) {
    Decomposed d;
    if (opt.decomp == "exact")
        d.pd = optimal_decomposition(g, budget_from(opt));
    else if (opt.decomp == "greedy")
        d.pd = greedy_decomposition(g);
    else
        d.pd = parse_decomposition(read_input(opt.decomp), g.num_vertices());
    d.npd = to_nice(g, d.pd);
    const std::string source = opt.decomp == "exact" || opt.decomp == "greedy" ? opt.decomp : "file";
    d.echo = {{"source", source}, {"width", d.pd.width()}, {"bags", bags_json(d.pd)}};
    return d;
}

std::string labels_text(const Labeling &labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        out += (i ? " " : "") + std::to_string(labels[i]);
    return out;
}

json vertices_json(const std::vector<Vertex> &vs) {
    json out = json::array();
    for (auto v : vs)
        out.push_back(v + 1);
    return out;
}

json matching_json(const Matching &m) {
    json out = json::array();
    for (Person man = 0; man < m.wife.size(); ++man)
        out.push_back({man + 1, m.wife[man] + 1});
    return out;
}

std::string matching_text(const Matching &m) {
    std::string out;
    for (Person man = 0; man < m.wife.size(); ++man)
        out += (man ? " " : "") + std::to_string(man + 1) + "-" + std::to_string(m.wife[man] + 1);
    return out;
}

std::uint64_t require_seed(const Options &opt) {
    if (!opt.seed)
        throw UsageError("--seed is required for sampling");
    return *opt.seed;
}

PartialLabeling fixes_from(const Options &opt, std::size_t n, Label c) {
    PartialLabeling fixed(n);
    for (const auto &f : opt.fixes) {
        const auto eq = f.find('=');
        std::size_t v = 0, label = 0;
        try {
            if (eq == std::string::npos)
                throw std::invalid_argument(f);
            std::size_t used = 0;
            v = std::stoul(f.substr(0, eq), &used);
            if (used != eq)
                throw std::invalid_argument(f);
            label = std::stoul(f.substr(eq + 1), &used);
            if (used != f.size() - eq - 1)
                throw std::invalid_argument(f);
        } catch (const std::exception &) {
            throw UsageError("--fix: expected <vertex>=<label>, got `" + f + "`");
        }
        if (v < 1 || v > n)
            throw UsageError("--fix: vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (label >= c)
            throw UsageError("--fix: label " + std::to_string(label) + " outside 0.." + std::to_string(c - 1));
        fixed.assign(v - 1, static_cast<Label>(label));
    }
    return fixed;
}

void emit(const Options &opt, const json &doc, const std::string &text) {
    if (opt.json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

void run_decompose(const Options &opt) {
    const auto g = parse_graph(read_input(opt.graph_path));
    if (opt.max_width >= 0) {
        const auto found = find_decomposition(g, opt.max_width, budget_from(opt));
        json doc = {{"max_width", opt.max_width}, {"feasible", found.has_value()}};
        std::string text = "width <= " + std::to_string(opt.max_width) + ": " + (found ? "yes" : "no") + "\n";
        if (found) {
            doc["decomposition"] = {{"source", "exact"}, {"width", found->width()}, {"bags", bags_json(*found)}};
            text += serialize_decomposition(*found, g.num_vertices());
        }
        emit(opt, doc, text);
        return;
    }
    const auto d = decompose(g, opt);
    json doc = {{"decomposition", d.echo}, {"pd", serialize_decomposition(d.pd, g.num_vertices())}};
    emit(opt, doc, serialize_decomposition(d.pd, g.num_vertices()));
}

void run_count(const Options &opt) {
    const auto g = parse_graph(read_input(opt.graph_path));
    const auto prob = problem_from(opt.problem);
    const auto d = decompose(g, opt);
    LabelingCounter counter(g, d.npd, prob);
    Count count;
    json doc = {{"problem", prob.name()}, {"decomposition", d.echo}};
    if (opt.fixes.empty()) {
        count = counter.count();
    } else {
        const auto fixed = fixes_from(opt, g.num_vertices(), prob.alphabet_size());
        count = counter.count_extensions(fixed);
        json f = json::object();
        for (Vertex v = 0; v < fixed.size(); ++v)
            if (fixed[v])
                f[std::to_string(v + 1)] = *fixed[v];
        doc["fixed"] = f;
    }
    doc["count"] = count.get_str();
    emit(opt, doc, count.get_str() + "\n");
}

void run_sample(const Options &opt) {
    const auto seed = require_seed(opt);
    if (opt.sampler != "fast" && opt.sampler != "reference")
        throw UsageError("--sampler: expected fast or reference");
    const auto g = parse_graph(read_input(opt.graph_path));
    const auto prob = problem_from(opt.problem);
    const auto d = decompose(g, opt);
    std::optional<TraceSampler> fast;
    if (opt.sampler == "fast")
        fast.emplace(g, d.npd, prob);
    json samples = json::array();
    std::string text;
    for (std::size_t i = 0; i < opt.samples; ++i) {
        Rng rng(derive_seed(seed, i));
        const auto labels = fast ? fast->sample(rng) : sample_labeling(g, d.npd, prob, rng);
        samples.push_back(labels_text(labels));
        text += labels_text(labels) + "\n";
    }
    json doc = {{"problem", prob.name()}, {"sampler", opt.sampler}, {"seed", seed},
                {"decomposition", d.echo}, {"samples", samples}};
    emit(opt, doc, text);
}

void run_cliques_count(const Options &opt) {
    const auto g = parse_graph(read_input(opt.graph_path));
    const auto d = decompose(g, opt);
    const auto counts = count_cliques(g, d.npd);
    json doc = {{"count", counts.total.get_str()}, {"decomposition", d.echo}};
    std::string text = counts.total.get_str() + "\n";
    if (opt.per_vertex) {
        json per = json::array();
        for (Vertex v = 0; v < counts.per_vertex.size(); ++v) {
            per.push_back(counts.per_vertex[v].get_str());
            text += std::to_string(v + 1) + " " + counts.per_vertex[v].get_str() + "\n";
        }
        doc["per_vertex"] = per;
    }
    emit(opt, doc, text);
}

void run_cliques_sample(const Options &opt) {
    const auto seed = require_seed(opt);
    const auto g = parse_graph(read_input(opt.graph_path));
    const auto d = decompose(g, opt);
    CliqueSampler sampler(g, d.npd);
    json samples = json::array();
    std::string text;
    for (std::size_t i = 0; i < opt.samples; ++i) {
        Rng rng(derive_seed(seed, i));
        const auto s = sampler.sample(rng);
        samples.push_back(vertices_json(s.vertices));
        for (std::size_t j = 0; j < s.vertices.size(); ++j)
            text += (j ? " " : "") + std::to_string(s.vertices[j] + 1);
        text += "\n";
    }
    emit(opt, {{"seed", seed}, {"decomposition", d.echo}, {"samples", samples}}, text);
}

void run_sm(const std::string &action, const Options &opt) {
    if (action == "gen") {
        const auto seed = require_seed(opt);
        Rng rng(seed);
        const auto inst = gen_k_range(opt.n, opt.k, rng);
        const auto text = serialize_sm(inst);
        emit(opt, {{"n", opt.n}, {"k", opt.k}, {"seed", seed}, {"range", range_of(inst)}, {"instance", text}},
             text);
        return;
    }
    const auto inst = parse_sm(read_input(opt.instance_path));
    if (action == "range") {
        const auto r = range_of(inst);
        emit(opt, {{"range", r}}, std::to_string(r) + "\n");
        return;
    }
    StableMatchingSampler sampler(inst);
    const auto &rd = sampler.digraph();
    if (action == "count") {
        emit(opt, {{"count", sampler.count().get_str()}, {"rotations", rd.rotations.size()}},
             sampler.count().get_str() + "\n");
    } else if (action == "rotations") {
        json rotations = json::array();
        std::string text;
        for (std::size_t id = 0; id < rd.rotations.size(); ++id) {
            json pairs = json::array();
            text += "rotation " + std::to_string(id + 1) + ":";
            for (auto [m, w] : rd.rotations[id]) {
                pairs.push_back({m + 1, w + 1});
                text += " " + std::to_string(m + 1) + "-" + std::to_string(w + 1);
            }
            rotations.push_back(pairs);
            text += "\n";
        }
        json edges = json::array();
        for (auto [a, b] : rd.edges) {
            edges.push_back({a + 1, b + 1});
            text += "edge " + std::to_string(a + 1) + " -> " + std::to_string(b + 1) + "\n";
        }
        emit(opt,
             {{"rotations", rotations},
              {"edges", edges},
              {"man_optimal", matching_json(rd.man_optimal)},
              {"woman_optimal", matching_json(rd.woman_optimal)}},
             text);
    } else {
        const auto seed = require_seed(opt);
        json samples = json::array();
        std::string text;
        for (std::size_t i = 0; i < opt.samples; ++i) {
            Rng rng(derive_seed(seed, i));
            const auto m = sampler.sample(rng);
            samples.push_back(matching_json(m));
            text += matching_text(m) + "\n";
        }
        emit(opt, {{"seed", seed}, {"count", sampler.count().get_str()}, {"samples", samples}}, text);
    }
}

void run_gen(const Options &opt) {
    const auto g = generate(parse_family(opt.family), opt.sizes);
    const auto text = serialize_graph(g);
    emit(opt, {{"family", opt.family}, {"graph", text}}, text);
}

void run_oracle(const std::string &what, const Options &opt) {
    if (what == "sm") {
        const auto inst = parse_sm(read_input(opt.instance_path));
        const auto all = oracle::enumerate_stable_matchings(inst);
        json list = json::array();
        for (const auto &m : all)
            list.push_back(matching_json(m));
        emit(opt, {{"count", std::to_string(all.size())}, {"matchings", list}}, std::to_string(all.size()) + "\n");
        return;
    }
    const auto g = parse_graph(read_input(opt.graph_path));
    if (what == "count") {
        const auto n = oracle::enumerate_valid_labelings(g, problem_from(opt.problem)).size();
        emit(opt, {{"count", std::to_string(n)}}, std::to_string(n) + "\n");
    } else if (what == "cliques") {
        const auto n = oracle::enumerate_cliques(g).size();
        emit(opt, {{"count", std::to_string(n)}}, std::to_string(n) + "\n");
    } else {
        const auto pw = oracle::exact_pathwidth(g);
        emit(opt, {{"pathwidth", pw}}, std::to_string(pw) + "\n");
    }
}

void add_decomp(CLI::App *cmd, Options &opt) {
    cmd->add_option("--graph", opt.graph_path, "input .gr file (- for stdin)")->required();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact counting and uniform sampling on graphs of bounded pathwidth"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "machine-readable output");
    app.add_option("--seed", opt.seed, "64-bit seed (required for sampling)");
    app.add_option("--budget-ms", opt.budget_ms, "time limit for exact decomposition search");
    app.add_option("--decomp", opt.decomp, "decomposition source: exact, greedy or a .pd file")
        ->capture_default_str();

    auto *decompose_cmd = app.add_subcommand("decompose", "path decomposition of a graph");
    add_decomp(decompose_cmd, opt);
    decompose_cmd->add_option("--max-width", opt.max_width, "decide whether pw <= max-width");

    auto *count_cmd = app.add_subcommand("count", "count valid labelings");
    add_decomp(count_cmd, opt);
    count_cmd->add_option("--problem", opt.problem, "coloring:<c>, indep, downset or custom:<path>")
        ->capture_default_str();
    count_cmd->add_option("--fix", opt.fixes, "fix a vertex label, <vertex>=<label> (repeatable)");

    auto *sample_cmd = app.add_subcommand("sample", "uniformly random valid labelings");
    add_decomp(sample_cmd, opt);
    sample_cmd->add_option("--problem", opt.problem, "coloring:<c>, indep, downset or custom:<path>")
        ->capture_default_str();
    sample_cmd->add_option("--samples", opt.samples, "number of samples")->capture_default_str();
    sample_cmd->add_option("--sampler", opt.sampler, "fast or reference")->capture_default_str();

    auto *cliques_cmd = app.add_subcommand("cliques", "count or sample nonempty cliques");
    cliques_cmd->require_subcommand(1);
    auto *cliques_count = cliques_cmd->add_subcommand("count", "number of cliques");
    add_decomp(cliques_count, opt);
    cliques_count->add_flag("--per-vertex", opt.per_vertex, "also report the count at each vertex");
    auto *cliques_sample = cliques_cmd->add_subcommand("sample", "uniformly random cliques");
    add_decomp(cliques_sample, opt);
    cliques_sample->add_option("--samples", opt.samples, "number of samples")->capture_default_str();

    auto *sm_cmd = app.add_subcommand("sm", "stable matchings");
    sm_cmd->require_subcommand(1);
    std::map<std::string, CLI::App *> sm_actions;
    for (const char *action : {"count", "sample", "rotations", "range"}) {
        auto *cmd = sm_cmd->add_subcommand(action);
        cmd->add_option("--instance", opt.instance_path, "input .sm file (- for stdin)")->required();
        sm_actions[action] = cmd;
    }
    sm_actions["sample"]->add_option("--samples", opt.samples, "number of samples")->capture_default_str();
    auto *sm_gen = sm_cmd->add_subcommand("gen", "random k-range instance");
    sm_gen->add_option("--n", opt.n, "instance size")->required();
    sm_gen->add_option("--k", opt.k, "range")->required();
    sm_actions["gen"] = sm_gen;

    auto *gen_cmd = app.add_subcommand("gen", "generate a graph family");
    gen_cmd->add_option("family", opt.family, "path, cycle, complete, grid, chain_dag, antichain_dag, edgeless")
        ->required();
    gen_cmd->add_option("sizes", opt.sizes, "size parameters (grid takes two)")->required();

    auto *oracle_cmd = app.add_subcommand("oracle", "brute-force reference answers");
    oracle_cmd->group("");
    oracle_cmd->require_subcommand(1);
    std::map<std::string, CLI::App *> oracle_actions;
    for (const char *what : {"count", "cliques", "pathwidth"}) {
        auto *cmd = oracle_cmd->add_subcommand(what);
        add_decomp(cmd, opt);
        oracle_actions[what] = cmd;
    }
    oracle_actions["count"]->add_option("--problem", opt.problem)->capture_default_str();
    oracle_actions["sm"] = oracle_cmd->add_subcommand("sm");
    oracle_actions["sm"]->add_option("--instance", opt.instance_path)->required();

    // Global flags may appear after the subcommand too.
    for (auto *sub : app.get_subcommands({}))
        sub->fallthrough();
    for (auto *sub : cliques_cmd->get_subcommands({}))
        sub->fallthrough();
    for (auto *sub : sm_cmd->get_subcommands({}))
        sub->fallthrough();
    for (auto *sub : oracle_cmd->get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*decompose_cmd)
            run_decompose(opt);
        else if (*count_cmd)
            run_count(opt);
        else if (*sample_cmd)
            run_sample(opt);
        else if (*cliques_count)
            run_cliques_count(opt);
        else if (*cliques_sample)
            run_cliques_sample(opt);
        else if (*gen_cmd)
            run_gen(opt);
        else if (*sm_cmd) {
            for (auto &[action, cmd] : sm_actions)
                if (*cmd)
                    run_sm(action, opt);
        } else {
            for (auto &[what, cmd] : oracle_actions)
                if (*cmd)
                    run_oracle(what, opt);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        if (opt.json)
            std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
        else
            std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return 1;
    }
    return 0;
}
