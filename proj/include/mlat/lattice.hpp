#pragma once

// The multiplicity lattice N^n with its covering relation and L1 metric.

#include "mlat/poly.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mlat {

/// A point of N^n, indexed by the arrangement's line order.
class Multiplicity {
public:
    Multiplicity() = default;
    explicit Multiplicity(std::vector<int> entries);
    Multiplicity(std::initializer_list<int> entries) : Multiplicity(std::vector<int>(entries)) {}

    static Multiplicity zero(std::size_t n) { return Multiplicity(std::vector<int>(n, 0)); }
    static Multiplicity constant(std::size_t n, int value) { return Multiplicity(std::vector<int>(n, value)); }
    /// Parses "1,2,0". Throws ParseError.
    static Multiplicity parse(const std::string& text);

    /// Number of lines n.
    std::size_t dim() const { return e_.size(); }
    /// |mu| = sum of entries.
    int total() const { return total_; }
    int max_entry() const;

    int operator[](std::size_t i) const { return e_[i]; }
    std::span<const int> entries() const { return e_; }

    /// Copy with entry i changed by delta; throws PreconditionViolated if it turns negative.
    Multiplicity shifted(std::size_t i, int delta) const;

    std::string to_string() const;

    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
    friend auto operator<=>(const Multiplicity& l, const Multiplicity& r) { return l.e_ <=> r.e_; }

private:
    std::vector<int> e_;
    int total_ = 0;
};

struct MultiplicityHash {
    std::size_t operator()(const Multiplicity& m) const noexcept;
};

/// Pointwise order mu <= nu.
bool leq(const Multiplicity& mu, const Multiplicity& nu);
/// mu is covered by nu: mu <= nu and |mu| + 1 = |nu|.
bool covered_by(const Multiplicity& mu, const Multiplicity& nu);

/// L1 distance. Throws LengthMismatch.
int distance(const Multiplicity& mu, const Multiplicity& nu);
/// Pointwise (min, max). Throws LengthMismatch.
std::pair<Multiplicity, Multiplicity> meet_join(const Multiplicity& mu, const Multiplicity& nu);

/// The finite window [0, B_1] x ... x [0, B_n].
class Box {
public:
    Box() = default;
    explicit Box(std::vector<int> upper);
    static Box cube(std::size_t n, int bound) { return Box(std::vector<int>(n, bound)); }

    std::size_t dim() const { return upper_.size(); }
    std::span<const int> upper() const { return upper_; }
    bool contains(const Multiplicity& mu) const;
    std::size_t point_count() const;

    /// Lexicographic position, last coordinate fastest.
    std::size_t index_of(const Multiplicity& mu) const;
    Multiplicity point_at(std::size_t index) const;

    std::string to_string() const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<int> upper_;
};

enum class Direction { Up, Down };

struct Neighbor {
    Multiplicity point;
    std::size_t line; // index of the changed coordinate
    Direction direction;
};

/// All points of the box that cover mu or are covered by it.
std::vector<Neighbor> covering_neighbors(const Multiplicity& mu, const Box& box);

/// Balanced, or in the cone of the unique line carrying more than half of |mu|.
struct PointClass {
    std::optional<std::size_t> cone_line;

    bool balanced() const { return !cone_line.has_value(); }
    friend bool operator==(const PointClass&, const PointClass&) = default;
};

PointClass classify_point(const Multiplicity& mu);

/// {nu in box : d(mu, nu) < radius}. Strict, so radius 0 gives the empty set.
std::vector<Multiplicity> ball(const Multiplicity& mu, int radius, const Box& box);
/// {nu in N^n : d(mu, nu) < radius}.
std::vector<Multiplicity> ball(const Multiplicity& mu, int radius);

/// A saturated chain: consecutive points differ by +1 in exactly one coordinate.
class Chain {
public:
    /// Throws PreconditionViolated when a step is not a cover.
    explicit Chain(std::vector<Multiplicity> points);

    std::size_t size() const { return points_.size(); }
    const Multiplicity& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Multiplicity>& points() const { return points_; }
    /// Line raised between points i and i+1.
    std::size_t step_line(std::size_t i) const;

private:
    std::vector<Multiplicity> points_;
};

/// Chain from mu to nu raising the lowest-index deficient coordinate first.
/// Throws NotComparable unless mu <= nu.
Chain saturated_chain(const Multiplicity& mu, const Multiplicity& nu);
/// Same endpoints, raising the highest-index deficient coordinate first.
Chain saturated_chain_reversed(const Multiplicity& mu, const Multiplicity& nu);

/// Product of the forms raised at the steps where delta strictly decreases.
/// Throws LengthMismatch when deltas is not aligned with the chain.
HomogPoly downalpha(const Arrangement& arr, const Chain& chain, std::span<const int> deltas);

} // namespace mlat
