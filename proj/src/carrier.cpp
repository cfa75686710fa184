#include "polyspan/carrier.hpp"

#include <cctype>
#include <limits>

#include "polyspan/error.hpp"

namespace polyspan {

GraphContext::GraphContext(std::size_t nodes, std::vector<Edge> edges)
    : nodes_(nodes), edges_(std::move(edges)) {
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        if (e.source >= nodes_ || e.target >= nodes_) {
            throw InputError("edge " + std::to_string(k) + " (" + std::to_string(e.source) + " -> " +
                             std::to_string(e.target) + ") references a node outside [0, " +
                             std::to_string(nodes_) + ")");
        }
    }
}

GraphContext GraphContext::fully_connected(std::size_t nodes, const std::vector<double>& weights) {
    if (!weights.empty() && weights.size() != nodes * nodes) {
        throw InputError("fully-connected weights must have n*n entries");
    }
    std::vector<Edge> edges;
    edges.reserve(nodes * nodes);
    for (std::size_t u = 0; u < nodes; ++u) {
        for (std::size_t v = 0; v < nodes; ++v) {
            edges.push_back({u, v, weights.empty() ? 0.0 : weights[u * nodes + v]});
        }
    }
    GraphContext g(nodes, std::move(edges));
    g.fully_connected_ = true;
    return g;
}

std::string Carrier::to_string() const {
    std::string out;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        if (t) out += " + ";
        const Term& term = terms_[t];
        if (term.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t f = 0; f < term.size(); ++f) {
            if (f) out += "*";
            out += term[f] == BaseSet::Node ? "V" : "E";
        }
    }
    return out;
}

std::string to_string(const Element& e) {
    std::string out = "(" + std::to_string(e.term) + ":";
    for (std::size_t k = 0; k < e.coords.size(); ++k) {
        out += (k ? "," : "") + std::to_string(e.coords[k]);
    }
    return out + ")";
}

namespace {

class CarrierParser {
public:
    explicit CarrierParser(std::string_view text) : text_(text) {}

    Carrier parse() {
        auto terms = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return Carrier(std::move(terms));
    }

private:
    std::vector<Term> sum() {
        auto terms = product();
        while (accept('+')) {
            auto more = product();
            terms.insert(terms.end(), more.begin(), more.end());
        }
        return terms;
    }

    std::vector<Term> product() {
        auto acc = factor();
        while (accept('*')) {
            auto rhs = factor();
            std::vector<Term> expanded;
            for (const Term& a : acc) {
                for (const Term& b : rhs) {
                    Term t = a;
                    t.insert(t.end(), b.begin(), b.end());
                    expanded.push_back(std::move(t));
                }
            }
            acc = std::move(expanded);
        }
        return acc;
    }

    std::vector<Term> factor() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected a factor, found end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == '1') {
            ++pos_;
            return {Term{}};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "E") return {Term{BaseSet::Edge}};
            if (name != "V") {
                pos_ = start;
                fail("unknown base set '" + std::string(name) + "'");
            }
            if (!accept('^')) return {Term{BaseSet::Node}};
            const std::size_t power = integer();
            return {Term(power, BaseSet::Node)};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::size_t integer() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (value > 64) fail("exponent too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer exponent");
        return value;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("carrier syntax error at position " + std::to_string(pos_) + ": " + msg, pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::size_t checked_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > kCarrierSizeCap / a) return kCarrierSizeCap + 1;
    return a * b;
}

void check_cap(std::size_t n) {
    if (n > kCarrierSizeCap) {
        throw InputError("carrier exceeds the size cap of " + std::to_string(kCarrierSizeCap) + " elements");
    }
}

}  // namespace

Carrier parse_carrier(std::string_view expr) { return CarrierParser(expr).parse(); }

std::size_t base_size(BaseSet b, const GraphContext& g) {
    return b == BaseSet::Node ? g.nodes() : g.edge_count();
}

std::size_t term_size(const Term& t, const GraphContext& g) {
    std::size_t n = 1;
    for (BaseSet b : t) {
        n = checked_mul(n, base_size(b, g));
        check_cap(n);
    }
    return n;
}

std::size_t size(const Carrier& c, const GraphContext& g) {
    std::size_t total = 0;
    for (const Term& t : c.terms()) {
        total += term_size(t, g);
        check_cap(total);
    }
    return total;
}

std::size_t term_offset(const Carrier& c, const GraphContext& g, std::size_t t) {
    std::size_t offset = 0;
    for (std::size_t k = 0; k < t; ++k) offset += term_size(c.term(k), g);
    return offset;
}

Element element_at(const Carrier& c, const GraphContext& g, std::size_t index) {
    std::size_t remaining = index;
    for (std::size_t t = 0; t < c.term_count(); ++t) {
        const Term& term = c.term(t);
        const std::size_t n = term_size(term, g);
        if (remaining < n) {
            Element e{t, std::vector<std::size_t>(term.size())};
            for (std::size_t f = term.size(); f-- > 0;) {
                const std::size_t base = base_size(term[f], g);
                e.coords[f] = remaining % base;
                remaining /= base;
            }
            return e;
        }
        remaining -= n;
    }
    throw std::out_of_range("element index " + std::to_string(index) + " out of range for carrier '" +
                            c.to_string() + "' of size " + std::to_string(size(c, g)));
}

bool contains(const Carrier& c, const GraphContext& g, const Element& e) {
    if (e.term >= c.term_count()) return false;
    const Term& term = c.term(e.term);
    if (e.coords.size() != term.size()) return false;
    for (std::size_t f = 0; f < term.size(); ++f) {
        if (e.coords[f] >= base_size(term[f], g)) return false;
    }
    return true;
}

std::size_t rank(const Carrier& c, const GraphContext& g, const Element& e) {
    if (!contains(c, g, e)) {
        throw std::out_of_range("element " + to_string(e) + " is not in carrier '" + c.to_string() + "'");
    }
    const Term& term = c.term(e.term);
    std::size_t local = 0;
    for (std::size_t f = 0; f < term.size(); ++f) local = local * base_size(term[f], g) + e.coords[f];
    return term_offset(c, g, e.term) + local;
}

}  // namespace polyspan
