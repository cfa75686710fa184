#pragma once

/**
 * @file algebra.hpp
 * @brief Semirings and the bag/list monads they are algebras for.
 *
 * A semiring supplies two aggregators: `reduce_bag` (the commutative monoid
 * plus, folded over a finite multiset) and `fold_list` (the monoid times,
 * folded left over an ordered list). The distributive law `distribute`
 * turns a list of bags into the bag of all ordered selections, which is how
 * a product of sums expands into a sum of products.
 *
 * Everything here is a value type or a pure function.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyspan/error.hpp"

namespace polyspan {

enum class ValueKind { TropicalNat, Real, MaxPlusReal, Boolean };

/// Sentinel used for the tropical "no path" value.
template <typename Scalar>
constexpr Scalar tropical_infinity() {
    if constexpr (std::numeric_limits<Scalar>::has_infinity) {
        return std::numeric_limits<Scalar>::infinity();
    } else {
        return std::numeric_limits<Scalar>::max();
    }
}

template <typename Scalar>
struct Semiring {
    using value_type = Scalar;
    using BinaryOp = std::function<Scalar(Scalar, Scalar)>;

    std::string name;
    Scalar zero{};  // plus identity
    Scalar one{};   // times identity
    BinaryOp plus;
    BinaryOp times;
    bool times_commutative = true;
    ValueKind kind = ValueKind::Real;

    /// Tropical and boolean values are compared exactly, reals with tolerance.
    bool exact() const noexcept {
        return kind == ValueKind::TropicalNat || kind == ValueKind::Boolean;
    }
};

/// (N u {inf}, min, +) with saturating addition at the infinity sentinel.
template <typename Scalar = double>
Semiring<Scalar> min_plus() {
    constexpr Scalar inf = tropical_infinity<Scalar>();
    return {"min-plus",
            inf,
            Scalar(0),
            [](Scalar a, Scalar b) { return std::min(a, b); },
            [](Scalar a, Scalar b) { return (a == inf || b == inf) ? inf : Scalar(a + b); },
            true,
            ValueKind::TropicalNat};
}

/// (R, +, *).
template <typename Scalar = double>
Semiring<Scalar> real_sum_product() {
    return {"real",
            Scalar(0),
            Scalar(1),
            [](Scalar a, Scalar b) { return a + b; },
            [](Scalar a, Scalar b) { return a * b; },
            true,
            ValueKind::Real};
}

/// (R u {-inf}, max, +).
template <typename Scalar = double>
Semiring<Scalar> max_plus() {
    constexpr Scalar ninf = -std::numeric_limits<Scalar>::infinity();
    return {"max-plus",
            ninf,
            Scalar(0),
            [](Scalar a, Scalar b) { return std::max(a, b); },
            [](Scalar a, Scalar b) { return (a == ninf || b == ninf) ? ninf : Scalar(a + b); },
            true,
            ValueKind::MaxPlusReal};
}

/// ({0, 1}, or, and).
template <typename Scalar = double>
Semiring<Scalar> boolean_or_and() {
    return {"bool",
            Scalar(0),
            Scalar(1),
            [](Scalar a, Scalar b) { return (a != Scalar(0) || b != Scalar(0)) ? Scalar(1) : Scalar(0); },
            [](Scalar a, Scalar b) { return (a != Scalar(0) && b != Scalar(0)) ? Scalar(1) : Scalar(0); },
            true,
            ValueKind::Boolean};
}

/// Not a semiring: plus is subtraction. Exists so law checks have something to reject.
template <typename Scalar = double>
Semiring<Scalar> broken_subtraction() {
    return {"broken-subtraction",
            Scalar(0),
            Scalar(1),
            [](Scalar a, Scalar b) { return a - b; },
            [](Scalar a, Scalar b) { return a * b; },
            true,
            ValueKind::Real};
}

/// Looks up one of the shipped instances by its CLI name.
template <typename Scalar = double>
Semiring<Scalar> semiring_by_name(std::string_view name) {
    if (name == "min-plus") return min_plus<Scalar>();
    if (name == "real") return real_sum_product<Scalar>();
    if (name == "max-plus") return max_plus<Scalar>();
    if (name == "bool") return boolean_or_and<Scalar>();
    throw InputError("unknown semiring '" + std::string(name) +
                     "' (expected min-plus, real, max-plus or bool)");
}

inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteTolerance = 1e-12;

/// Relative closeness with an absolute floor near zero; infinities must match exactly.
template <typename Scalar>
bool approx_equal(Scalar a, Scalar b, double rel = kRelativeTolerance,
                  double abs = kAbsoluteTolerance) {
    if (a == b) return true;
    if constexpr (std::numeric_limits<Scalar>::is_integer) {
        return false;
    } else {
        if (std::isnan(a) || std::isnan(b) || std::isinf(a) || std::isinf(b)) return false;
        const double diff = std::abs(double(a) - double(b));
        const double scale = std::max(std::abs(double(a)), std::abs(double(b)));
        return diff <= std::max(abs, rel * scale);
    }
}

template <typename Scalar>
bool values_equal(const Semiring<Scalar>& s, Scalar a, Scalar b) {
    return s.exact() ? a == b : approx_equal(a, b);
}

// ---------------------------------------------------------------------------
// Bag: finite multiset, stored as value -> multiplicity in sorted key order.
// ---------------------------------------------------------------------------

template <typename T>
class Bag {
public:
    using Counts = std::map<T, std::size_t>;
    using const_iterator = typename Counts::const_iterator;

    Bag() = default;
    Bag(std::initializer_list<T> values) {
        for (const auto& v : values) insert(v);
    }

    void insert(const T& value, std::size_t multiplicity = 1) {
        if (multiplicity == 0) return;
        counts_[value] += multiplicity;
    }

    std::size_t multiplicity(const T& value) const {
        auto it = counts_.find(value);
        return it == counts_.end() ? 0 : it->second;
    }

    /// Total number of elements counted with multiplicity.
    std::size_t size() const {
        std::size_t total = 0;
        for (const auto& [v, c] : counts_) total += c;
        return total;
    }
    std::size_t distinct() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }

    const_iterator begin() const { return counts_.begin(); }
    const_iterator end() const { return counts_.end(); }

    friend bool operator==(const Bag& a, const Bag& b) { return a.counts_ == b.counts_; }
    friend bool operator<(const Bag& a, const Bag& b) {
        return std::lexicographical_compare(a.counts_.begin(), a.counts_.end(), b.counts_.begin(),
                                            b.counts_.end());
    }

private:
    Counts counts_;
};

template <typename T>
struct OrderedList {
    std::vector<T> items;

    OrderedList() = default;
    OrderedList(std::initializer_list<T> values) : items(values) {}
    explicit OrderedList(std::vector<T> values) : items(std::move(values)) {}

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    const T& operator[](std::size_t k) const { return items[k]; }

    friend bool operator==(const OrderedList& a, const OrderedList& b) { return a.items == b.items; }
    friend bool operator<(const OrderedList& a, const OrderedList& b) { return a.items < b.items; }
};

template <typename T>
Bag<T> unit_bag(const T& x) {
    Bag<T> b;
    b.insert(x);
    return b;
}

template <typename T>
OrderedList<T> unit_list(const T& x) {
    return OrderedList<T>{std::vector<T>{x}};
}

/// Functor action: multiplicities of equal images accumulate.
template <typename F, typename T>
auto map_bag(F&& f, const Bag<T>& b) {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Bag<U> out;
    for (const auto& [value, count] : b) out.insert(f(value), count);
    return out;
}

template <typename F, typename T>
auto map_list(F&& f, const OrderedList<T>& l) {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    OrderedList<U> out;
    out.items.reserve(l.size());
    for (const auto& v : l.items) out.items.push_back(f(v));
    return out;
}

template <typename T>
Bag<T> join_bag(const Bag<Bag<T>>& nested) {
    Bag<T> out;
    for (const auto& [inner, outer_count] : nested) {
        for (const auto& [value, count] : inner) out.insert(value, count * outer_count);
    }
    return out;
}

template <typename T>
OrderedList<T> join_list(const OrderedList<OrderedList<T>>& nested) {
    OrderedList<T> out;
    for (const auto& inner : nested.items) {
        out.items.insert(out.items.end(), inner.items.begin(), inner.items.end());
    }
    return out;
}

/// Plus over the bag with multiplicity; the empty bag reduces to zero.
template <typename Scalar>
Scalar reduce_bag(const Semiring<Scalar>& s, const Bag<Scalar>& b) {
    Scalar acc = s.zero;
    for (const auto& [value, count] : b) {
        for (std::size_t k = 0; k < count; ++k) acc = s.plus(acc, value);
    }
    return acc;
}

/// Left fold of times starting at one.
template <typename Scalar>
Scalar fold_list(const Semiring<Scalar>& s, const OrderedList<Scalar>& l) {
    Scalar acc = s.one;
    for (const auto& v : l.items) acc = s.times(acc, v);
    return acc;
}

/// The distributive law: list of bags -> bag of all ordered selections.
template <typename T>
Bag<OrderedList<T>> distribute(const OrderedList<Bag<T>>& factors) {
    Bag<OrderedList<T>> acc;
    acc.insert(OrderedList<T>{});
    for (const auto& factor : factors.items) {
        Bag<OrderedList<T>> next;
        for (const auto& [prefix, prefix_count] : acc) {
            for (const auto& [value, count] : factor) {
                OrderedList<T> extended = prefix;
                extended.items.push_back(value);
                next.insert(extended, prefix_count * count);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Law checking
// ---------------------------------------------------------------------------

struct LawResult {
    std::string law;
    bool passed = true;
    std::size_t checked = 0;
    std::string counterexample;  // first failing sample, empty when passed
};

struct LawReport {
    std::string semiring;
    std::vector<LawResult> laws;

    bool all_passed() const {
        return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.passed; });
    }

    const LawResult* find(std::string_view law) const {
        for (const auto& r : laws) {
            if (r.law == law) return &r;
        }
        return nullptr;
    }
};

namespace detail {

template <typename Scalar>
std::string show(Scalar v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

template <typename Scalar>
std::string show_triple(const std::array<Scalar, 3>& t) {
    return "(" + show(t[0]) + ", " + show(t[1]) + ", " + show(t[2]) + ")";
}

}  // namespace detail

/**
 * Evaluates every semiring and algebra law on the sampled triples (a, b, c).
 *
 * Nested bags and lists for the aggregation laws are assembled from the same
 * triples. Failures are recorded with the first counterexample; nothing throws.
 */
template <typename Scalar>
LawReport check_laws(const Semiring<Scalar>& s, const std::vector<std::array<Scalar, 3>>& samples) {
    using Triple = std::array<Scalar, 3>;
    LawReport report;
    report.semiring = s.name;
    auto eq = [&](Scalar x, Scalar y) { return values_equal(s, x, y); };

    auto run = [&](std::string law, auto&& holds) {
        LawResult r;
        r.law = std::move(law);
        for (const Triple& t : samples) {
            ++r.checked;
            if (!holds(t[0], t[1], t[2])) {
                r.passed = false;
                r.counterexample = detail::show_triple(t);
                break;
            }
        }
        report.laws.push_back(std::move(r));
    };

    const auto& P = s.plus;
    const auto& T = s.times;

    run("plus-unit", [&](Scalar a, Scalar, Scalar) { return eq(P(s.zero, a), a) && eq(P(a, s.zero), a); });
    run("plus-associative", [&](Scalar a, Scalar b, Scalar c) { return eq(P(P(a, b), c), P(a, P(b, c))); });
    run("plus-commutative", [&](Scalar a, Scalar b, Scalar) { return eq(P(a, b), P(b, a)); });
    run("times-unit", [&](Scalar a, Scalar, Scalar) { return eq(T(s.one, a), a) && eq(T(a, s.one), a); });
    run("times-associative", [&](Scalar a, Scalar b, Scalar c) { return eq(T(T(a, b), c), T(a, T(b, c))); });
    if (s.times_commutative) {
        run("times-commutative", [&](Scalar a, Scalar b, Scalar) { return eq(T(a, b), T(b, a)); });
    }
    run("left-distributive",
        [&](Scalar x, Scalar a, Scalar b) { return eq(T(x, P(a, b)), P(T(x, a), T(x, b))); });
    run("right-distributive",
        [&](Scalar x, Scalar a, Scalar b) { return eq(T(P(a, b), x), P(T(a, x), T(b, x))); });
    run("zero-annihilates", [&](Scalar a, Scalar, Scalar) {
        return eq(T(a, s.zero), s.zero) && eq(T(s.zero, a), s.zero);
    });
    run("singleton-aggregation", [&](Scalar a, Scalar, Scalar) {
        return eq(reduce_bag(s, unit_bag(a)), a) && eq(fold_list(s, unit_list(a)), a);
    });
    run("nested-aggregation", [&](Scalar a, Scalar b, Scalar c) {
        Bag<Bag<Scalar>> nested{Bag<Scalar>{a, b, c}, Bag<Scalar>{a, a}, Bag<Scalar>{b},
                                Bag<Scalar>{}, Bag<Scalar>{c, a}};
        const Scalar flat = reduce_bag(s, join_bag(nested));
        const Scalar twice = reduce_bag(s, map_bag([&](const Bag<Scalar>& inner) { return reduce_bag(s, inner); }, nested));
        return eq(flat, twice);
    });
    run("nested-fold", [&](Scalar a, Scalar b, Scalar c) {
        OrderedList<OrderedList<Scalar>> nested{OrderedList<Scalar>{a, b}, OrderedList<Scalar>{c},
                                                OrderedList<Scalar>{}, OrderedList<Scalar>{b, a}};
        const Scalar flat = fold_list(s, join_list(nested));
        const Scalar twice =
            fold_list(s, map_list([&](const OrderedList<Scalar>& inner) { return fold_list(s, inner); }, nested));
        return eq(flat, twice);
    });
    return report;
}

}  // namespace polyspan
