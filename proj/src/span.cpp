#include "polyspan/span.hpp"

namespace polyspan {

PolynomialSpan::PolynomialSpan(Carrier W, Carrier X, Carrier Y, Carrier Z, Arrow i, Arrow p, Arrow o)
    : W_(std::move(W)), X_(std::move(X)), Y_(std::move(Y)), Z_(std::move(Z)),
      i_(std::move(i)), p_(std::move(p)), o_(std::move(o)) {
    auto require = [](const Arrow& a, const char* name, const Carrier& dom, const Carrier& cod) {
        if (a.domain() != dom || a.codomain() != cod) {
            throw TypeError(std::string("arrow ") + name + " is typed '" + a.domain().to_string() + "' -> '" +
                            a.codomain().to_string() + "' but the span needs '" + dom.to_string() + "' -> '" +
                            cod.to_string() + "'");
        }
    };
    require(i_, "i", X_, W_);
    require(p_, "p", X_, Y_);
    require(o_, "o", Y_, Z_);
}

SpanSpec PolynomialSpan::to_spec() const {
    return {W_.to_string(), X_.to_string(), Y_.to_string(), Z_.to_string(),
            i_.to_string(), p_.to_string(), o_.to_string()};
}

namespace {

struct Parsed {
    std::optional<Carrier> carriers[4];
    std::optional<Arrow> arrows[3];
};

std::string quoted(const std::string& expr, const std::exception& e) {
    return "'" + expr + "': " + e.what();
}

Parsed parse_spec(const SpanSpec& spec, ValidationReport& report) {
    Parsed out;
    const std::string* carrier_text[4] = {&spec.W, &spec.X, &spec.Y, &spec.Z};
    const char* carrier_name[4] = {"W", "X", "Y", "Z"};
    for (int k = 0; k < 4; ++k) {
        try {
            out.carriers[k] = parse_carrier(*carrier_text[k]);
        } catch (const ParseError& e) {
            report.issues.push_back({SpanIssue::Kind::CarrierSyntax, carrier_name[k], e.what()});
        }
    }
    // i: X -> W, p: X -> Y, o: Y -> Z
    const std::string* arrow_text[3] = {&spec.i, &spec.p, &spec.o};
    const char* arrow_name[3] = {"i", "p", "o"};
    const int dom[3] = {1, 1, 2};
    const int cod[3] = {0, 2, 3};
    for (int k = 0; k < 3; ++k) {
        if (!out.carriers[dom[k]] || !out.carriers[cod[k]]) continue;
        try {
            out.arrows[k] = build_arrow(*arrow_text[k], *out.carriers[dom[k]], *out.carriers[cod[k]]);
        } catch (const ParseError& e) {
            report.issues.push_back({SpanIssue::Kind::ArrowSyntax, arrow_name[k], quoted(*arrow_text[k], e)});
        } catch (const DuplicateDeliveryError& e) {
            report.issues.push_back({SpanIssue::Kind::DuplicatedDelivery, arrow_name[k], quoted(*arrow_text[k], e)});
        } catch (const TypeError& e) {
            report.issues.push_back({SpanIssue::Kind::TypeMismatch, arrow_name[k], quoted(*arrow_text[k], e)});
        }
    }
    return out;
}

}  // namespace

bool ValidationReport::duplicated_delivery() const noexcept {
    for (const auto& issue : issues) {
        if (issue.kind == SpanIssue::Kind::DuplicatedDelivery) return true;
    }
    return false;
}

std::string ValidationReport::to_string() const {
    if (valid()) return "valid";
    std::string out = "invalid";
    for (const auto& issue : issues) out += "\n  " + issue.where + ": " + issue.message;
    return out;
}

ValidationReport validate_span(const SpanSpec& spec) {
    ValidationReport report;
    parse_spec(spec, report);
    return report;
}

ValidationReport validate_span(const PolynomialSpan& span) {
    ValidationReport report;
    auto check = [&](const Arrow& a, const char* name, const Carrier& dom, const Carrier& cod) {
        if (a.domain() != dom || a.codomain() != cod) {
            report.issues.push_back({SpanIssue::Kind::TypeMismatch, name,
                                     "typed '" + a.domain().to_string() + "' -> '" + a.codomain().to_string() +
                                         "', expected '" + dom.to_string() + "' -> '" + cod.to_string() + "'"});
        }
    };
    check(span.input(), "i", span.X(), span.W());
    check(span.process(), "p", span.X(), span.Y());
    check(span.output(), "o", span.Y(), span.Z());
    return report;
}

PolynomialSpan build_span(const SpanSpec& spec) {
    ValidationReport report;
    Parsed parsed = parse_spec(spec, report);
    if (!report.valid()) {
        const SpanIssue& first = report.issues.front();
        const bool is_carrier = first.kind == SpanIssue::Kind::CarrierSyntax;
        const std::string msg = (is_carrier ? "carrier " : "arrow ") + first.where + " " + first.message;
        if (first.kind == SpanIssue::Kind::CarrierSyntax || first.kind == SpanIssue::Kind::ArrowSyntax) {
            throw ParseError(msg, 0);
        }
        if (first.kind == SpanIssue::Kind::DuplicatedDelivery) throw DuplicateDeliveryError(msg);
        throw TypeError(msg);
    }
    return PolynomialSpan(*parsed.carriers[0], *parsed.carriers[1], *parsed.carriers[2], *parsed.carriers[3],
                          *parsed.arrows[0], *parsed.arrows[1], *parsed.arrows[2]);
}

BoundSpan::BoundSpan(PolynomialSpan span, GraphContext graph)
    : span_(std::move(span)), graph_(std::move(graph)) {
    size_W_ = size(span_.W(), graph_);
    input_map_ = tabulate(span_.input(), graph_);

    const std::vector<std::size_t> process = tabulate(span_.process(), graph_);
    fibers_.assign(size(span_.Y(), graph_), {});
    for (std::size_t x = 0; x < process.size(); ++x) fibers_[process[x]].push_back(x);

    const std::vector<std::size_t> output = tabulate(span_.output(), graph_);
    deliveries_.assign(size(span_.Z(), graph_), {});
    for (std::size_t y = 0; y < output.size(); ++y) deliveries_[output[y]].push_back(y);
}

}  // namespace polyspan
