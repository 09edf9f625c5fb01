#pragma once

// Sweeps of delta over a box, the connected components of its support, and
// the ball structure of the finite ones.

#include "mlat/dermod.hpp"
#include "mlat/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlat {

struct PointRecord {
    Multiplicity mu;
    int d1 = 0;
    int d2 = 0;
    int delta = 0;
    /// Balanced-only scans do not solve cone points; their values come from
    /// the bound d1 <= |mu| - mu_H and are lower estimates of delta.
    bool estimated = false;

    friend bool operator==(const PointRecord&, const PointRecord&) = default;
};

struct ScanOptions {
    unsigned jobs = 1;
    bool balanced_only = false;
};

/// Delta over every point of a box, in box index order.
class ScanResult {
public:
    /// Throws PreconditionViolated unless points enumerate the box in order.
    ScanResult(Arrangement arr, Box box, std::vector<PointRecord> points);

    const Arrangement& arrangement() const { return arr_; }
    const Box& box() const { return box_; }
    const std::vector<PointRecord>& points() const { return points_; }

    bool contains(const Multiplicity& mu) const { return box_.contains(mu); }
    const PointRecord& at(const Multiplicity& mu) const { return points_[box_.index_of(mu)]; }
    int delta(const Multiplicity& mu) const { return at(mu).delta; }
    /// In the support of delta and solved exactly.
    bool in_support(const Multiplicity& mu) const { return at(mu).delta > 0; }

    double seconds = 0;
    unsigned jobs = 1;

private:
    Arrangement arr_;
    Box box_;
    std::vector<PointRecord> points_;
};

/// Solves every point of the box. The table is independent of opts.jobs.
/// Solver errors are rethrown with the offending point in the message.
ScanResult scan(const Solver& solver, const Box& box, const ScanOptions& opts = {});

enum class ComponentKind { CertifiedFiniteBall, ConePortion, BoundaryUndetermined };

std::string to_string(ComponentKind kind);

struct Component {
    int id = 0;
    std::vector<Multiplicity> members; // box index order
    ComponentKind kind = ComponentKind::BoundaryUndetermined;
    std::optional<std::size_t> cone_line;
    /// Points where delta attains its maximum on the component.
    std::vector<Multiplicity> maximizers;
    /// Certified balls: the first maximizer and its delta.
    std::optional<Multiplicity> center;
    int radius = 0;
    std::string certificate;

    bool contains(const Multiplicity& mu) const;
};

struct ComponentIndex {
    std::vector<Component> components;
    std::vector<int> component_of; // per box index; -1 outside the support

    const Component* find(const Box& box, const Multiplicity& mu) const;
};

/// Breadth-first partition of the support inside the box under covering
/// edges. A component is certified as a finite ball when all members are
/// balanced and every covering neighbour of every member lies in the box, so
/// the component cannot continue outside the window.
ComponentIndex components(const ScanResult& scan);

/// Minimum distance between members of two components.
int component_distance(const Component& a, const Component& b);

struct CenterReport {
    int component = 0;
    Multiplicity center;
    int delta = 0;
    std::string error; // non-empty when the maximizer is not unique
};

/// One entry per certified ball.
std::vector<CenterReport> centers(const ScanResult& scan, const ComponentIndex& index);

/// Members of c agreeing with mu off line h, ordered by their h entry.
/// Throws PointNotInComponent.
std::vector<Multiplicity> section(const Component& c, const Multiplicity& mu, std::size_t h);

/// Unique maximizer of a unimodal sequence. Throws NotUnimodal otherwise and
/// PreconditionViolated for empty or misaligned input.
Multiplicity peak_element(const std::vector<Multiplicity>& section, const std::vector<int>& deltas);

} // namespace mlat
