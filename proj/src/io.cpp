#include "polyspan/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace polyspan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool parse_index(const std::string& tok, std::size_t& out) {
    if (tok.empty() || tok.size() > 12) return false;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
    }
    out = std::stoull(tok);
    return true;
}

double parse_number(const std::string& tok) {
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || std::isnan(v)) throw InputError("'" + tok + "' is not a number");
    return v;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GraphContext parse_graph(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    bool full = false;
    std::vector<Edge> edges;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
    };

    while (std::getline(is, line)) {
        ++line_no;
        const auto toks = split(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        if (!have_header) {
            if (toks.size() < 2 || toks.size() > 3 || !parse_index(toks[0], n) || !parse_index(toks[1], m)) {
                fail("expected header 'n m [directed|full]'");
            }
            if (toks.size() == 3) {
                if (toks[2] == "full") {
                    full = true;
                } else if (toks[2] != "directed") {
                    fail("unknown graph mode '" + toks[2] + "'");
                }
            }
            have_header = true;
            continue;
        }
        if (edges.size() == m) fail("more than the declared " + std::to_string(m) + " edges");
        std::size_t u = 0;
        std::size_t v = 0;
        if (toks.size() != 3 || !parse_index(toks[0], u) || !parse_index(toks[1], v)) {
            fail("expected 'u v w' with integer u and v");
        }
        if (u >= n || v >= n) fail("node index out of range [0, " + std::to_string(n) + ")");
        double w = 0;
        if (toks[2] == "inf") {
            w = kInf;
        } else {
            const std::string& t = toks[2];
            const bool negative = t.front() == '-';
            std::size_t magnitude = 0;
            if (!parse_index(negative ? t.substr(1) : t, magnitude)) fail("weight '" + t + "' is not an integer or 'inf'");
            if (negative && magnitude != 0) fail("negative weight " + t + " (weights must be >= 0)");
            w = static_cast<double>(magnitude);
        }
        edges.push_back({u, v, w});
    }
    if (!have_header) {
        line_no = std::max<std::size_t>(line_no, 1);
        fail("missing header 'n m [directed|full]'");
    }
    if (edges.size() != m) {
        line_no += 1;
        fail("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    if (!full) return GraphContext(n, std::move(edges));

    std::vector<double> weights(n * n, kInf);
    for (const Edge& e : edges) {
        double& slot = weights[e.source * n + e.target];
        slot = std::min(slot, e.weight);
    }
    return GraphContext::fully_connected(n, weights);
}

GraphContext load_graph(const std::string& path) { return parse_graph(read_file(path)); }

SpanSpec parse_span_spec(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("span spec is not valid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("span spec must be a JSON object", 0);
    auto field = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string()) {
            throw ParseError(std::string("span spec needs a string member \"") + key + "\"", 0);
        }
        return j[key].get<std::string>();
    };
    return {field("W"), field("X"), field("Y"), field("Z"), field("i"), field("p"), field("o")};
}

PolynomialSpan load_span_spec(const std::string& path) { return build_span(parse_span_spec(read_file(path))); }

RowMatrix<double> parse_rows(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto toks = split(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        std::vector<double> row;
        for (const auto& t : toks) {
            try {
                row.push_back(parse_number(t));
            } catch (const InputError& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("line " + std::to_string(line_no) + ": rows must all have the same width", line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows", 0);
    RowMatrix<double> out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return out;
}

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    if (v == std::floor(v) && std::abs(v) < 9.0e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace polyspan
