#include "polyspan/cli.hpp"

#include <fstream>
#include <sstream>

#include "polyspan/algorithms.hpp"
#include "polyspan/gnn.hpp"
#include "polyspan/io.hpp"
#include "polyspan/random.hpp"
#include "polyspan/verify.hpp"

namespace polyspan {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::string& require(const std::optional<std::string>& v, const char* flag, const std::string& verb) {
    if (!v) throw UsageError(verb + " requires " + flag);
    return *v;
}

void write_row(std::ostream& os, const auto& row) {
    for (Eigen::Index c = 0; c < row.size(); ++c) os << (c ? " " : "") << format_value(row(c));
    os << '\n';
}

void write_rows(std::ostream& os, const std::string& prefix, const auto& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << prefix << r << ": ";
        write_row(os, m.row(r));
    }
}

std::string run_bellman_ford(const Command& cmd) {
    const GraphContext g = load_graph(require(cmd.graph, "--graph", cmd.verb));
    if (!cmd.source) throw UsageError("bellman-ford requires --source");
    std::vector<double> d;
    if (cmd.semiring == "min-plus") {
        d = bellman_ford(g, *cmd.source);
    } else if (cmd.semiring == "bool") {
        d = reachability(g, *cmd.source);
    } else {
        throw InputError("bellman-ford supports --semiring min-plus or bool, not '" + cmd.semiring + "'");
    }
    std::ostringstream os;
    for (std::size_t u = 0; u < d.size(); ++u) os << u << ' ' << format_value(d[u]) << '\n';
    return os.str();
}

std::string run_floyd_warshall(const Command& cmd) {
    const GraphContext g = load_graph(require(cmd.graph, "--graph", cmd.verb));
    if (cmd.semiring != "min-plus") throw InputError("floyd-warshall runs over min-plus only");
    const DistanceMatrix d = floyd_warshall(distance_matrix(g));
    std::ostringstream os;
    for (Eigen::Index r = 0; r < d.entries.rows(); ++r) write_row(os, d.entries.row(r));
    return os.str();
}

std::string run_span(const Command& cmd) {
    const GraphContext g = load_graph(require(cmd.graph, "--graph", cmd.verb));
    const PolynomialSpan span = load_span_spec(require(cmd.span, "--span", cmd.verb));
    const Semiring<double> s = semiring_by_name<double>(cmd.semiring);
    const BoundSpan bs(span, g);
    DataMap<double> input;
    if (cmd.input) {
        input = DataMap<double>(span.W(), g, parse_rows(read_file(*cmd.input)));
    } else {
        // E summands carry edge weights, V^2 summands the one-step distance
        // matrix, everything else `one`.
        const DistanceMatrix d = distance_matrix(g);
        std::vector<RowMatrix<double>> blocks;
        for (std::size_t t = 0; t < span.W().term_count(); ++t) {
            const Term& term = span.W().term(t);
            const auto rows = static_cast<Eigen::Index>(term_size(term, g));
            RowMatrix<double> b = RowMatrix<double>::Constant(rows, 1, s.one);
            if (term == Term{BaseSet::Edge}) {
                for (Eigen::Index k = 0; k < rows; ++k) b(k, 0) = g.edge(static_cast<std::size_t>(k)).weight;
            } else if (term == Term{BaseSet::Node, BaseSet::Node}) {
                const Eigen::Index n = d.entries.rows();
                for (Eigen::Index k = 0; k < rows; ++k) b(k, 0) = d.entries(k / n, k % n);
            }
            blocks.push_back(std::move(b));
        }
        input = DataMap<double>::from_blocks(span.W(), g, blocks);
    }
    const DataMap<double> out = integral_transform(bs, s, FoldStrategy<double>::semiring_fold(), input);
    std::ostringstream os;
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        os << to_string(element_at(span.Z(), g, static_cast<std::size_t>(r))) << ' ';
        write_row(os, out.row(r));
    }
    return os.str();
}

std::string run_check_laws(const Command& cmd) {
    const Semiring<double> s = semiring_by_name<double>(cmd.semiring);
    Rng rng(cmd.seed);
    const LawReport report = check_laws(s, random_triples(rng, s.kind, 1000));
    std::ostringstream os;
    os << "semiring " << report.semiring << '\n';
    for (const auto& law : report.laws) {
        os << (law.passed ? "PASS " : "FAIL ") << law.law << " (" << law.checked << " samples)";
        if (!law.passed) os << " counterexample " << law.counterexample;
        os << '\n';
    }
    if (!report.all_passed()) throw VerificationFailure(os.str());
    return os.str();
}

std::string run_gnn_demo(const Command& cmd) {
    const GraphContext g = load_graph(require(cmd.graph, "--graph", cmd.verb));
    LayerConfig cfg;
    cfg.seed = cmd.seed;
    if (cmd.semiring == "max-plus") {
        cfg.aggregator = Aggregator::Max;
    } else if (cmd.semiring != "real" && cmd.semiring != "min-plus") {
        throw InputError("gnn-demo aggregates with --semiring real (sum) or max-plus (max)");
    }
    // Features come from a stream separate from the parameters.
    Rng rng(cmd.seed ^ 0x9e3779b97f4a7c15ULL);
    const GraphFeatures x = random_features(rng, g, cfg);
    const LayerParams params = make_layer_params(cfg);
    std::ostringstream os;
    os << "mpnn\n";
    write_rows(os, "node ", mpnn_forward(g, x, cfg, params).values());
    if (g.is_fully_connected()) {
        const EdgeLayerOutput v3 = v3_forward(g, x, cfg, params);
        os << "v3\n";
        write_rows(os, "node ", v3.nodes.values());
        write_rows(os, "pair ", v3.edges.values());
    }
    return os.str();
}

std::string run_verify(const Command& cmd) {
    std::ostringstream os;
    bool ok = true;
    auto emit = [&](const CheckResult& r) {
        ok = ok && r.passed;
        os << format_check(r) << '\n';
    };
    if (cmd.graph) emit(check_graph(load_graph(*cmd.graph), *cmd.graph));
    for (const auto& r : run_verification(cmd.seed)) emit(r);
    if (!ok) throw VerificationFailure(os.str());
    return os.str();
}

}  // namespace

CommandResult run_command(const Command& cmd) {
    CommandResult result;
    try {
        std::string text;
        if (cmd.verb == "bellman-ford") {
            text = run_bellman_ford(cmd);
        } else if (cmd.verb == "floyd-warshall") {
            text = run_floyd_warshall(cmd);
        } else if (cmd.verb == "run-span") {
            text = run_span(cmd);
        } else if (cmd.verb == "check-laws") {
            text = run_check_laws(cmd);
        } else if (cmd.verb == "gnn-demo") {
            text = run_gnn_demo(cmd);
        } else if (cmd.verb == "verify") {
            text = run_verify(cmd);
        } else {
            throw UsageError("unknown command '" + cmd.verb + "'");
        }
        if (cmd.out) {
            std::ofstream f(*cmd.out, std::ios::binary);
            if (!(f << text)) throw InputError("cannot write '" + *cmd.out + "'");
        } else {
            result.out = std::move(text);
        }
    } catch (const UsageError& e) {
        result = {kExitUsage, "", std::string("usage error: ") + e.what() + "\n"};
    } catch (const VerificationFailure& e) {
        result = {kExitVerification, "", e.what()};
    } catch (const std::exception& e) {
        result = {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    }
    return result;
}

}  // namespace polyspan
