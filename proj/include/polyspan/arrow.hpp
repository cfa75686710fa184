#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polyspan/carrier.hpp"
#include "polyspan/error.hpp"

namespace polyspan {

enum class ArrowKind { Identity, Bang, Source, Target, Project, Inject, Copair, Compose };

/// A type-checked arrow body. Every node knows its own domain and codomain.
struct ArrowNode {
    ArrowKind kind = ArrowKind::Identity;
    Carrier domain;
    Carrier codomain;
    std::vector<std::size_t> indices;  // proj factors / inj summand, 0-based
    // Copair: one branch per domain summand. Compose: outermost first, so
    // children.back() is applied first.
    std::vector<std::shared_ptr<const ArrowNode>> children;
};

/// Raised when a copair lists more branches than its domain has summands:
/// some element would have to be delivered to two places.
class DuplicateDeliveryError : public TypeError {
public:
    using TypeError::TypeError;
};

/// A total function between two carriers, built from the primitive catalog
/// {id, bang, src, tgt, proj, inj, copair, compose}.
class Arrow {
public:
    Arrow() = default;
    explicit Arrow(std::shared_ptr<const ArrowNode> body) : body_(std::move(body)) {}

    const Carrier& domain() const { return body_->domain; }
    const Carrier& codomain() const { return body_->codomain; }
    const ArrowNode& body() const { return *body_; }

    /// Normalised surface syntax; two arrows with equal text and typing are equal.
    std::string to_string() const;

    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.domain() == b.domain() && a.codomain() == b.codomain() && a.to_string() == b.to_string();
    }

private:
    std::shared_ptr<const ArrowNode> body_;
};

/**
 * Parses and type-checks an arrow expression.
 *
 *     arrow := atom {"." atom}
 *     atom  := "id" | "bang" | "src" | "tgt" | "proj[" INT {"," INT} "]"
 *            | "inj[" INT "]" | "[" arrow {";" arrow} "]" | "(" arrow ")"
 *
 * `a.b` applies b first. proj and inj indices are 1-based. src/tgt accept E
 * or V*V (read as an edge u -> v). Throws ParseError or TypeError.
 */
Arrow build_arrow(std::string_view spec, const Carrier& domain, const Carrier& codomain);

Element eval_arrow(const Arrow& a, const Element& e, const GraphContext& g);

/// Every x with a(x) = e, in ascending canonical rank of a.domain().
std::vector<Element> preimage(const Arrow& a, const Element& e, const GraphContext& g);

/// Codomain rank of a(x) for every domain rank x.
std::vector<std::size_t> tabulate(const Arrow& a, const GraphContext& g);

}  // namespace polyspan
