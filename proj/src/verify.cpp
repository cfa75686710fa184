#include "polyspan/verify.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "polyspan/algebra.hpp"
#include "polyspan/algorithms.hpp"
#include "polyspan/gnn.hpp"
#include "polyspan/oracles.hpp"
#include "polyspan/random.hpp"

namespace polyspan {

namespace {

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string describe(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << v[k];
    return os.str();
}

template <typename A, typename B>
bool close_matrices(const A& a, const B& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (!approx_equal(a(r, c), b(r, c))) return false;
        }
    }
    return true;
}

// Rows of `moved` on V must be rows of `base` relabelled by perm.
bool node_equivariant(const RowMatrix<double>& base, const RowMatrix<double>& moved,
                      const std::vector<std::size_t>& perm) {
    for (std::size_t u = 0; u < perm.size(); ++u) {
        const auto a = static_cast<Eigen::Index>(u);
        const auto b = static_cast<Eigen::Index>(perm[u]);
        for (Eigen::Index c = 0; c < base.cols(); ++c) {
            if (!approx_equal(base(a, c), moved(b, c))) return false;
        }
    }
    return true;
}

bool pair_equivariant(const RowMatrix<double>& base, const RowMatrix<double>& moved,
                      const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto a = static_cast<Eigen::Index>(i * n + j);
            const auto b = static_cast<Eigen::Index>(perm[i] * n + perm[j]);
            for (Eigen::Index c = 0; c < base.cols(); ++c) {
                if (!approx_equal(base(a, c), moved(b, c))) return false;
            }
        }
    }
    return true;
}

LayerConfig random_config(Rng& rng, std::uint64_t seed) {
    LayerConfig cfg;
    cfg.seed = seed;
    cfg.aggregator = std::bernoulli_distribution(0.5)(rng) ? Aggregator::Max : Aggregator::Sum;
    std::uniform_int_distribution<Eigen::Index> width(1, 4);
    cfg.node_width = width(rng);
    cfg.edge_width = width(rng);
    cfg.graph_width = width(rng);
    cfg.message_width = width(rng);
    cfg.output_width = width(rng);
    return cfg;
}

}  // namespace

CheckResult check_bellman_ford_equivalence(std::uint64_t seed, std::size_t graphs) {
    CheckResult r{"bellman-ford equivalence", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    std::vector<NamedGraph> cases = adversarial_graphs();
    for (std::size_t k = 0; k < graphs; ++k) cases.push_back({"random #" + std::to_string(k), random_graph(rng)});
    std::size_t runs = 0;
    for (const auto& c : cases) {
        for (std::size_t s = 0; s < c.graph.nodes(); ++s) {
            const auto got = bellman_ford(c.graph, s);
            const auto want = oracle::bellman_ford(c.graph, s);
            ++runs;
            if (got != want) {
                r.passed = false;
                r.detail = c.name + " source " + std::to_string(s) + ": engine [" + describe(got) + "] oracle [" +
                           describe(want) + "]";
                r.seconds = timer.seconds();
                return r;
            }
        }
    }
    r.seconds = timer.seconds();
    r.detail = std::to_string(cases.size()) + " graphs, " + std::to_string(runs) + " sources";
    if (r.seconds >= kEquivalenceBudgetSeconds) {
        r.passed = false;
        r.detail += ", over the time budget";
    }
    return r;
}

CheckResult check_floyd_warshall_equivalence(std::uint64_t seed, std::size_t matrices) {
    CheckResult r{"floyd-warshall equivalence", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    for (std::size_t k = 0; k < matrices; ++k) {
        const DistanceMatrix d = random_distance_matrix(rng);
        if (!(floyd_warshall(d) == oracle::floyd_warshall(d))) {
            r.passed = false;
            r.detail = "mismatch on random matrix #" + std::to_string(k) + " (n=" + std::to_string(d.nodes()) + ")";
            r.seconds = timer.seconds();
            return r;
        }
    }
    r.seconds = timer.seconds();
    r.detail = std::to_string(matrices) + " matrices";
    if (r.seconds >= kEquivalenceBudgetSeconds) {
        r.passed = false;
        r.detail += ", over the time budget";
    }
    return r;
}

CheckResult check_bellman_ford_update(std::uint64_t seed, std::size_t graphs) {
    CheckResult r{"bellman-ford update rule", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    std::vector<NamedGraph> cases = adversarial_graphs();
    for (std::size_t k = 0; k < graphs; ++k) cases.push_back({"random #" + std::to_string(k), random_graph(rng)});
    // b = 0 is the times-identity of min-plus, so the state's bias is already the b == 0 case.
    for (const auto& c : cases) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto d = random_distances(rng, c.graph.nodes());
            const auto st = make_bellman_ford_state(c.graph, d);
            const DataMap<double> step = bellman_ford_step(c.graph, st);
            const auto want = oracle::bellman_ford_update(c.graph, d);
            for (std::size_t u = 0; u < want.size(); ++u) {
                if (step(static_cast<Eigen::Index>(u), 0) != want[u]) {
                    r.passed = false;
                    r.detail = c.name + " node " + std::to_string(u);
                    r.seconds = timer.seconds();
                    return r;
                }
            }
        }
    }
    r.seconds = timer.seconds();
    r.detail = std::to_string(cases.size()) + " graphs, 3 distance vectors each";
    return r;
}

CheckResult check_algebra_laws(std::uint64_t seed, std::size_t samples) {
    CheckResult r{"algebra laws", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    std::vector<std::string> failures;
    std::size_t laws = 0;
    for (const auto& s : {min_plus<double>(), real_sum_product<double>(), max_plus<double>(), boolean_or_and<double>()}) {
        const LawReport report = check_laws(s, random_triples(rng, s.kind, samples));
        for (const auto& law : report.laws) {
            ++laws;
            if (!law.passed) failures.push_back(s.name + "/" + law.law + " at " + law.counterexample);
        }

        // Distributive law against the semiring: the sum over all selections
        // of their products equals the product of the sums.
        for (std::size_t k = 0; k < samples; ++k) {
            OrderedList<Bag<double>> factors;
            const std::size_t count = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
            for (std::size_t f = 0; f < count; ++f) {
                Bag<double> b;
                const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
                for (std::size_t e = 0; e < size; ++e) b.insert(random_value(rng, s.kind));
                factors.items.push_back(b);
            }
            const double expanded = reduce_bag(
                s, map_bag([&](const OrderedList<double>& l) { return fold_list(s, l); }, distribute(factors)));
            const double factored =
                fold_list(s, map_list([&](const Bag<double>& b) { return reduce_bag(s, b); }, factors));
            if (!values_equal(s, expanded, factored)) {
                failures.push_back(s.name + "/distributive-law sample " + std::to_string(k));
                break;
            }
        }
        ++laws;
    }

    // Monad laws for bags and lists of integers.
    auto small_bag = [&](auto&& elem) {
        using T = std::decay_t<decltype(elem())>;
        Bag<T> b;
        const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        for (std::size_t k = 0; k < size; ++k) b.insert(elem());
        return b;
    };
    auto small_list = [&](auto&& elem) {
        using T = std::decay_t<decltype(elem())>;
        OrderedList<T> l;
        const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        for (std::size_t k = 0; k < size; ++k) l.items.push_back(elem());
        return l;
    };
    auto atom = [&] { return std::uniform_int_distribution<int>(0, 5)(rng); };
    bool bag_ok = true;
    bool list_ok = true;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto b = small_bag(atom);
        const auto bbb = small_bag([&] { return small_bag([&] { return small_bag(atom); }); });
        bag_ok = bag_ok && join_bag(unit_bag(b)) == b &&
                 join_bag(map_bag([](int v) { return unit_bag(v); }, b)) == b &&
                 join_bag(join_bag(bbb)) == join_bag(map_bag([](const Bag<Bag<int>>& x) { return join_bag(x); }, bbb));
        const auto l = small_list(atom);
        const auto lll = small_list([&] { return small_list([&] { return small_list(atom); }); });
        list_ok = list_ok && join_list(unit_list(l)) == l &&
                  join_list(map_list([](int v) { return unit_list(v); }, l)) == l &&
                  join_list(join_list(lll)) ==
                      join_list(map_list([](const OrderedList<OrderedList<int>>& x) { return join_list(x); }, lll));
    }
    laws += 2;
    if (!bag_ok) failures.push_back("bag monad laws");
    if (!list_ok) failures.push_back("list monad laws");

    const LawReport broken = check_laws(broken_subtraction<double>(), random_triples(rng, ValueKind::Real, samples));
    const LawResult* assoc = broken.find("plus-associative");
    if (!assoc || assoc->passed) failures.push_back("broken instance passed plus-associative");

    r.seconds = timer.seconds();
    if (failures.empty()) {
        r.detail = std::to_string(laws) + " laws x " + std::to_string(samples) +
                   " samples; broken instance fails associativity at " + assoc->counterexample;
    } else {
        r.passed = false;
        r.detail = failures.front() + (failures.size() > 1 ? " (+" + std::to_string(failures.size() - 1) + " more)" : "");
    }
    return r;
}

CheckResult check_equivariance(std::uint64_t seed, std::size_t triples) {
    CheckResult r{"permutation equivariance", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    for (std::size_t k = 0; k < triples && r.passed; ++k) {
        const LayerConfig cfg = random_config(rng, seed + k);
        const auto params = make_layer_params(cfg);

        const GraphContext sparse = random_graph(rng, 6, 14, 20);
        const GraphFeatures xs = random_features(rng, sparse, cfg);
        const auto perm_s = random_permutation(rng, sparse.nodes());
        const auto moved_s = permute(sparse, xs, perm_s);
        const auto a = mpnn_forward(sparse, xs, cfg, params);
        const auto b = mpnn_forward(moved_s.graph, moved_s.features, cfg, params);
        if (!node_equivariant(a.values(), b.values(), perm_s)) {
            r.passed = false;
            r.detail = "mpnn, triple #" + std::to_string(k);
            break;
        }

        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const GraphContext full = GraphContext::fully_connected(n);
        const GraphFeatures xf = random_features(rng, full, cfg);
        const auto perm_f = random_permutation(rng, n);
        const auto moved_f = permute(full, xf, perm_f);
        const auto v2a = v2_forward(full, xf, cfg, params);
        const auto v2b = v2_forward(moved_f.graph, moved_f.features, cfg, params);
        if (!node_equivariant(v2a.nodes.values(), v2b.nodes.values(), perm_f) ||
            !pair_equivariant(v2a.edges.values(), v2b.edges.values(), perm_f)) {
            r.passed = false;
            r.detail = "v2, triple #" + std::to_string(k);
            break;
        }
        const auto v3a = v3_forward(full, xf, cfg, params);
        const auto v3b = v3_forward(moved_f.graph, moved_f.features, cfg, params);
        if (!node_equivariant(v3a.nodes.values(), v3b.nodes.values(), perm_f) ||
            !pair_equivariant(v3a.edges.values(), v3b.edges.values(), perm_f)) {
            r.passed = false;
            r.detail = "v3, triple #" + std::to_string(k);
            break;
        }
    }
    r.seconds = timer.seconds();
    if (r.passed) r.detail = std::to_string(triples) + " triples x {mpnn, v2, v3}";
    return r;
}

CheckResult check_mpnn_correspondence(std::uint64_t seed, std::size_t instances) {
    CheckResult r{"mpnn direct correspondence", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    for (std::size_t k = 0; k < instances; ++k) {
        const LayerConfig cfg = random_config(rng, seed + k);
        const auto params = make_layer_params(cfg);
        const GraphContext g = random_graph(rng, 8, 24, 20);
        const GraphFeatures x = random_features(rng, g, cfg);
        if (!close_matrices(mpnn_forward(g, x, cfg, params).values(), oracle::mpnn(g, x, cfg, params))) {
            r.passed = false;
            r.detail = "instance #" + std::to_string(k);
            break;
        }
    }
    r.seconds = timer.seconds();
    if (r.passed) r.detail = std::to_string(instances) + " instances";
    return r;
}

CheckResult check_v3_alignment(std::uint64_t seed, std::size_t matrices) {
    CheckResult r{"v3 relaxation alignment", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    for (std::size_t k = 0; k < matrices; ++k) {
        const DistanceMatrix d = random_distance_matrix(rng, 8);
        const DistanceMatrix got = v3_relaxation(d);
        if (!(got == oracle::relaxation_step(d)) || !(got == floyd_warshall_step(d))) {
            r.passed = false;
            r.detail = "matrix #" + std::to_string(k) + " (n=" + std::to_string(d.nodes()) + ")";
            break;
        }
    }
    r.seconds = timer.seconds();
    if (r.passed) r.detail = std::to_string(matrices) + " matrices";
    return r;
}

CheckResult check_gradients(std::uint64_t seed, std::size_t mlps) {
    CheckResult r{"gradient check", true, "", 0.0};
    Timer timer;
    Rng rng(seed);
    double worst = 0.0;
    std::size_t checked = 0;
    std::size_t excluded = 0;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (std::size_t k = 0; k < mlps; ++k) {
        const std::size_t depth = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        std::vector<Eigen::Index> widths{std::uniform_int_distribution<Eigen::Index>(1, 6)(rng)};
        std::vector<Activation> acts;
        for (std::size_t l = 0; l < depth; ++l) {
            widths.push_back(std::uniform_int_distribution<Eigen::Index>(1, 6)(rng));
            acts.push_back(l + 1 < depth ? Activation::Relu : Activation::Identity);
        }
        const auto mlp = Mlp<double>::random(widths, acts, rng);
        Eigen::VectorXd input(widths.front());
        for (auto& v : input) v = unif(rng);
        Eigen::VectorXd target(widths.back());
        for (auto& v : target) v = unif(rng);
        const auto report = finite_diff_check(mlp, input, squared_loss<double>(target));
        worst = std::max(worst, report.max_relative_error);
        checked += report.checked;
        excluded += report.excluded;
    }
    r.seconds = timer.seconds();
    r.passed = worst < kGradientTolerance && checked > 0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu MLPs, max relative error %.3g over %zu parameters (%zu at relu kinks skipped)",
                  mlps, worst, checked, excluded);
    r.detail = buf;
    return r;
}

CheckResult check_single_span_rejected() {
    CheckResult r{"duplicated delivery rejected", true, "", 0.0};
    Timer timer;
    const ValidationReport single = validate_span(v2_single_span_spec());
    const bool split_ok = validate_span(v2_node_spec()).valid() && validate_span(v2_edge_spec()).valid() &&
                          validate_span(v3_spec()).valid();
    r.passed = !single.valid() && single.duplicated_delivery() && split_ok;
    r.detail = single.valid() ? "single-span layer was accepted" : single.issues.front().message;
    if (!split_ok) r.detail = "a two-span or V^3 layer failed validation";
    r.seconds = timer.seconds();
    return r;
}

CheckResult check_graph(const GraphContext& g, const std::string& label) {
    CheckResult r{"graph " + label, true, "", 0.0};
    Timer timer;
    for (std::size_t s = 0; s < g.nodes(); ++s) {
        if (bellman_ford(g, s) != oracle::bellman_ford(g, s) || reachability(g, s) != oracle::reachability(g, s)) {
            r.passed = false;
            r.detail = "source " + std::to_string(s);
            break;
        }
    }
    if (r.passed) {
        const DistanceMatrix d = distance_matrix(g);
        if (!(floyd_warshall(d) == oracle::floyd_warshall(d))) {
            r.passed = false;
            r.detail = "all-pairs distances";
        }
    }
    r.seconds = timer.seconds();
    if (r.passed) r.detail = std::to_string(g.nodes()) + " sources, all-pairs";
    return r;
}

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    return {check_bellman_ford_equivalence(seed),
            check_floyd_warshall_equivalence(seed + 1),
            check_bellman_ford_update(seed + 2),
            check_algebra_laws(seed + 3),
            check_equivariance(seed + 4),
            check_mpnn_correspondence(seed + 5),
            check_v3_alignment(seed + 6),
            check_gradients(seed + 7),
            check_single_span_rejected()};
}

std::string format_check(const CheckResult& r) {
    return std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail;
}

}  // namespace polyspan
