#include <cstdio>
#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "polyspan/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dynamic programming and message passing as integral transforms over polynomial spans"};
    app.require_subcommand(1, 1);

    polyspan::Command cmd;
    std::string graph, span, input, out;
    std::size_t source = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", graph, "graph file");
        sub->add_option("--semiring", cmd.semiring, "min-plus | real | max-plus | bool");
        sub->add_option("--out", out, "write output here instead of stdout");
    };
    const std::pair<const char*, const char*> verbs[] = {
        {"bellman-ford", "single-source distances (or reachability with --semiring bool)"},
        {"floyd-warshall", "all-pairs distance matrix"},
        {"run-span", "one integral transform of a JSON span over a graph"},
        {"check-laws", "semiring and aggregation laws on 1000 seeded samples"},
        {"gnn-demo", "output rows of seed-determined message-passing layers"},
        {"verify", "oracle-equivalence and property suites"},
    };
    for (const auto& [verb, help] : verbs) {
        CLI::App* sub = app.add_subcommand(verb, help);
        add_common(sub);
        const std::string v = verb;
        if (v == "bellman-ford") sub->add_option("--source", source, "source node");
        if (v == "run-span") {
            sub->add_option("--span", span, "span spec (JSON)");
            sub->add_option("--input", input, "rows on W, one per line");
        }
        if (v == "check-laws" || v == "gnn-demo" || v == "verify") sub->add_option("--seed", cmd.seed, "RNG seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return polyspan::kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    cmd.verb = sub->get_name();
    auto given = [&](const char* flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt && opt->count() > 0;
    };
    if (given("--graph")) cmd.graph = graph;
    if (given("--span")) cmd.span = span;
    if (given("--input")) cmd.input = input;
    if (given("--out")) cmd.out = out;
    if (given("--source")) cmd.source = source;

    const polyspan::CommandResult r = polyspan::run_command(cmd);
    std::fwrite(r.out.data(), 1, r.out.size(), stdout);
    std::fwrite(r.err.data(), 1, r.err.size(), stderr);
    return r.exit_code;
}
