#include "polyspan/arrow.hpp"

#include <cctype>
#include <optional>

namespace polyspan {

namespace {

struct Syntax {
    ArrowKind kind = ArrowKind::Identity;
    std::vector<std::size_t> indices;  // as written (1-based)
    std::vector<Syntax> children;
};

class ArrowParser {
public:
    explicit ArrowParser(std::string_view text) : text_(text) {}

    Syntax parse() {
        Syntax s = chain();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

private:
    Syntax chain() {
        std::vector<Syntax> parts;
        auto push = [&](Syntax s) {
            if (s.kind == ArrowKind::Compose) {
                for (auto& c : s.children) parts.push_back(std::move(c));
            } else {
                parts.push_back(std::move(s));
            }
        };
        push(atom());
        while (accept('.')) push(atom());
        if (parts.size() == 1) return std::move(parts.front());
        return Syntax{ArrowKind::Compose, {}, std::move(parts)};
    }

    Syntax atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected an arrow, found end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Syntax inner = chain();
            expect(')');
            return inner;
        }
        if (c == '[') {
            ++pos_;
            Syntax copair{ArrowKind::Copair, {}, {}};
            copair.children.push_back(chain());
            while (accept(';')) copair.children.push_back(chain());
            expect(']');
            return copair;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        if (word == "id") return {ArrowKind::Identity, {}, {}};
        if (word == "bang") return {ArrowKind::Bang, {}, {}};
        if (word == "src") return {ArrowKind::Source, {}, {}};
        if (word == "tgt") return {ArrowKind::Target, {}, {}};
        if (word == "proj" || word == "inj") {
            Syntax s{word == "proj" ? ArrowKind::Project : ArrowKind::Inject, {}, {}};
            expect('[');
            s.indices.push_back(integer());
            while (accept(',')) s.indices.push_back(integer());
            expect(']');
            if (s.kind == ArrowKind::Inject && s.indices.size() != 1) fail("inj takes exactly one index");
            return s;
        }
        pos_ = start;
        fail("unknown arrow primitive '" + std::string(word) + "'");
    }

    std::size_t integer() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (value > 1'000'000) fail("index too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
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

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("arrow syntax error at position " + std::to_string(pos_) + ": " + msg, pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

const Carrier& singleton_carrier() {
    static const Carrier one({Term{}});
    return one;
}

const Carrier& node_carrier() {
    static const Carrier v({Term{BaseSet::Node}});
    return v;
}

bool edge_like(const Carrier& c) {
    if (c.term_count() != 1) return false;
    const Term& t = c.term(0);
    return t == Term{BaseSet::Edge} || t == Term{BaseSet::Node, BaseSet::Node};
}

std::string quoted(const Carrier& c) { return "'" + c.to_string() + "'"; }

[[noreturn]] void type_fail(const std::string& where, const std::string& msg) {
    throw TypeError(where.empty() ? msg : where + ": " + msg);
}

class TypeChecker {
public:
    // Synthesises the codomain where the primitive determines it; nullopt
    // when only the expected codomain can fix it (inj, mixed copairs).
    std::optional<Carrier> infer(const Syntax& s, const Carrier& dom, const std::string& where) {
        switch (s.kind) {
            case ArrowKind::Identity:
                return dom;
            case ArrowKind::Bang:
                return singleton_carrier();
            case ArrowKind::Source:
            case ArrowKind::Target:
                require_edge_like(s, dom, where);
                return node_carrier();
            case ArrowKind::Project:
                return Carrier({projected_term(s, dom, where)});
            case ArrowKind::Inject:
                return std::nullopt;
            case ArrowKind::Copair: {
                require_branch_count(s, dom, where);
                std::optional<Carrier> common;
                for (std::size_t b = 0; b < s.children.size(); ++b) {
                    auto c = infer(s.children[b], dom.summand(b), branch_where(where, b));
                    if (!c || (common && *common != *c)) return std::nullopt;
                    common = c;
                }
                return common;
            }
            case ArrowKind::Compose: {
                std::optional<Carrier> cur = dom;
                for (std::size_t k = s.children.size(); k-- > 0;) {
                    cur = infer(s.children[k], *cur, where);
                    if (!cur) return std::nullopt;
                }
                return cur;
            }
        }
        return std::nullopt;
    }

    std::shared_ptr<const ArrowNode> check(const Syntax& s, const Carrier& dom, const Carrier& cod,
                                           const std::string& where) {
        auto node = std::make_shared<ArrowNode>();
        node->kind = s.kind;
        node->domain = dom;
        node->codomain = cod;
        switch (s.kind) {
            case ArrowKind::Identity:
                if (dom != cod) type_fail(where, "id needs equal domain and codomain, got " + quoted(dom) + " -> " + quoted(cod));
                break;
            case ArrowKind::Bang:
                if (cod != singleton_carrier()) type_fail(where, "bang lands in '1', not " + quoted(cod));
                break;
            case ArrowKind::Source:
            case ArrowKind::Target:
                require_edge_like(s, dom, where);
                if (cod != node_carrier()) {
                    type_fail(where, std::string(s.kind == ArrowKind::Source ? "src" : "tgt") +
                                         " lands in 'V', not " + quoted(cod));
                }
                break;
            case ArrowKind::Project: {
                const Term selected = projected_term(s, dom, where);
                if (cod != Carrier({selected})) {
                    type_fail(where, "proj selects " + quoted(Carrier({selected})) + " but codomain is " + quoted(cod));
                }
                for (std::size_t k : s.indices) node->indices.push_back(k - 1);
                break;
            }
            case ArrowKind::Inject: {
                if (dom.term_count() != 1) type_fail(where, "inj needs a single-summand domain, got " + quoted(dom));
                const std::size_t j = s.indices.front();
                if (j < 1 || j > cod.term_count()) {
                    type_fail(where, "inj[" + std::to_string(j) + "] out of range for codomain " + quoted(cod));
                }
                if (cod.term(j - 1) != dom.term(0)) {
                    type_fail(where, "inj[" + std::to_string(j) + "] maps " + quoted(dom) + " into summand " +
                                         quoted(cod.summand(j - 1)) + " of " + quoted(cod));
                }
                node->indices.push_back(j - 1);
                break;
            }
            case ArrowKind::Copair:
                require_branch_count(s, dom, where);
                for (std::size_t b = 0; b < s.children.size(); ++b) {
                    node->children.push_back(check(s.children[b], dom.summand(b), cod, branch_where(where, b)));
                }
                break;
            case ArrowKind::Compose: {
                std::vector<std::shared_ptr<const ArrowNode>> reversed;
                Carrier cur = dom;
                for (std::size_t k = s.children.size(); k-- > 1;) {
                    auto mid = infer(s.children[k], cur, where);
                    if (!mid) {
                        type_fail(where, "cannot determine the carrier after step " + std::to_string(k + 1) +
                                             " of a composition starting at " + quoted(dom));
                    }
                    reversed.push_back(check(s.children[k], cur, *mid, where));
                    cur = *mid;
                }
                reversed.push_back(check(s.children.front(), cur, cod, where));
                node->children.assign(reversed.rbegin(), reversed.rend());
                break;
            }
        }
        return node;
    }

private:
    static std::string branch_where(const std::string& where, std::size_t b) {
        std::string here = "copair branch " + std::to_string(b + 1);
        return where.empty() ? here : where + ", " + here;
    }

    static void require_edge_like(const Syntax& s, const Carrier& dom, const std::string& where) {
        if (!edge_like(dom)) {
            type_fail(where, std::string(s.kind == ArrowKind::Source ? "src" : "tgt") +
                                 " needs domain 'E' or 'V*V', got " + quoted(dom));
        }
    }

    static Term projected_term(const Syntax& s, const Carrier& dom, const std::string& where) {
        if (dom.term_count() != 1) type_fail(where, "proj needs a single-summand domain, got " + quoted(dom));
        const Term& t = dom.term(0);
        Term selected;
        for (std::size_t k : s.indices) {
            if (k < 1 || k > t.size()) {
                type_fail(where, "proj index " + std::to_string(k) + " out of range for " + quoted(dom) +
                                     " with " + std::to_string(t.size()) + " factors");
            }
            selected.push_back(t[k - 1]);
        }
        return selected;
    }

    static void require_branch_count(const Syntax& s, const Carrier& dom, const std::string& where) {
        const std::size_t branches = s.children.size();
        const std::size_t summands = dom.term_count();
        if (branches > summands) {
            const std::string msg = "copair has " + std::to_string(branches) + " branches but domain " +
                                    quoted(dom) + " has " + std::to_string(summands) +
                                    " summand(s): an element would be delivered to more than one place, "
                                    "which is not a function";
            throw DuplicateDeliveryError(where.empty() ? msg : where + ": " + msg);
        }
        if (branches < summands) {
            type_fail(where, "copair has " + std::to_string(branches) + " branches but domain " + quoted(dom) +
                                 " has " + std::to_string(summands) + " summands");
        }
    }
};

void print(const ArrowNode& n, std::string& out) {
    auto list = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + std::to_string(idx[k] + 1);
    };
    switch (n.kind) {
        case ArrowKind::Identity: out += "id"; break;
        case ArrowKind::Bang: out += "bang"; break;
        case ArrowKind::Source: out += "src"; break;
        case ArrowKind::Target: out += "tgt"; break;
        case ArrowKind::Project:
            out += "proj[";
            list(n.indices);
            out += "]";
            break;
        case ArrowKind::Inject:
            out += "inj[";
            list(n.indices);
            out += "]";
            break;
        case ArrowKind::Copair:
            out += "[";
            for (std::size_t k = 0; k < n.children.size(); ++k) {
                if (k) out += "; ";
                print(*n.children[k], out);
            }
            out += "]";
            break;
        case ArrowKind::Compose:
            for (std::size_t k = 0; k < n.children.size(); ++k) {
                if (k) out += ".";
                print(*n.children[k], out);
            }
            break;
    }
}

Element eval_node(const ArrowNode& n, const Element& e, const GraphContext& g) {
    switch (n.kind) {
        case ArrowKind::Identity:
            return e;
        case ArrowKind::Bang:
            return Element{0, {}};
        case ArrowKind::Source:
        case ArrowKind::Target: {
            const bool source = n.kind == ArrowKind::Source;
            if (n.domain.term(0).size() == 2) return Element{0, {e.coords[source ? 0 : 1]}};
            const Edge& edge = g.edge(e.coords[0]);
            return Element{0, {source ? edge.source : edge.target}};
        }
        case ArrowKind::Project: {
            Element out{0, {}};
            out.coords.reserve(n.indices.size());
            for (std::size_t k : n.indices) out.coords.push_back(e.coords[k]);
            return out;
        }
        case ArrowKind::Inject:
            return Element{n.indices.front(), e.coords};
        case ArrowKind::Copair:
            return eval_node(*n.children[e.term], Element{0, e.coords}, g);
        case ArrowKind::Compose: {
            Element cur = e;
            for (std::size_t k = n.children.size(); k-- > 0;) cur = eval_node(*n.children[k], cur, g);
            return cur;
        }
    }
    return e;
}

}  // namespace

std::string Arrow::to_string() const {
    std::string out;
    print(*body_, out);
    return out;
}

Arrow build_arrow(std::string_view spec, const Carrier& domain, const Carrier& codomain) {
    const Syntax syntax = ArrowParser(spec).parse();
    TypeChecker checker;
    return Arrow(checker.check(syntax, domain, codomain, ""));
}

Element eval_arrow(const Arrow& a, const Element& e, const GraphContext& g) {
    if (!contains(a.domain(), g, e)) {
        throw InputError("element " + to_string(e) + " is not in the arrow domain '" + a.domain().to_string() + "'");
    }
    return eval_node(a.body(), e, g);
}

std::vector<Element> preimage(const Arrow& a, const Element& e, const GraphContext& g) {
    std::vector<Element> out;
    const std::size_t n = size(a.domain(), g);
    for (std::size_t r = 0; r < n; ++r) {
        Element x = element_at(a.domain(), g, r);
        if (eval_node(a.body(), x, g) == e) out.push_back(std::move(x));
    }
    return out;
}

std::vector<std::size_t> tabulate(const Arrow& a, const GraphContext& g) {
    const std::size_t n = size(a.domain(), g);
    std::vector<std::size_t> table(n);
    for (std::size_t r = 0; r < n; ++r) {
        table[r] = rank(a.codomain(), g, eval_node(a.body(), element_at(a.domain(), g, r), g));
    }
    return table;
}

}  // namespace polyspan
