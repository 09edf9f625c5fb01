#pragma once

// Mechanical checks of the structure of the delta support on scan data, and
// construction of verified bases from centers of finite components.

#include "mlat/dermod.hpp"
#include "mlat/explorer.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mlat {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

/// Outcome of one check. A failing verdict always carries witnesses.
struct Verdict {
    std::string check;
    std::string property;
    Status status = Status::Pass;
    std::string reason;
    std::vector<std::string> witnesses;
    std::size_t cases = 0;

    static Verdict skipped(std::string check, std::string property, std::string reason);

    void fail(std::string witness);
    bool passed() const { return status == Status::Pass; }
};

/// Combined status: Fail if any fails, Skipped if all are skipped, else Pass.
Status aggregate(const std::vector<Verdict>& verdicts);

struct CheckOptions {
    /// Pairwise checks run exhaustively up to this many pairs, then sample.
    std::size_t max_pairs = 200000;
    std::uint64_t seed = 0x6d6c6174u;
    /// Witness lists are truncated to this length.
    std::size_t max_witnesses = 20;
};

/// Adjacent points of the box differ in delta by exactly one.
Verdict check_covering_steps(const ScanResult& scan, const CheckOptions& opts = {});

/// Every certified ball has a unique center c, equals the strict ball of
/// radius delta(c) around it, delta(v) = delta(c) - d(c, v) on it, and
/// delta = |delta(c) - d| on the two spheres just outside.
Verdict check_ball_structure(const ScanResult& scan, const ComponentIndex& index, const CheckOptions& opts = {});

/// Same as the ball check for a single candidate center, solving directly on
/// the strict ball of radius delta(c) + 2 instead of reading a scan.
Verdict verify_ball_locally(const Solver& solver, const Multiplicity& center, unsigned jobs = 1);

/// Along covers inside a component theta is unchanged on ascents and gains
/// the raised form on descents; along saturated chains theta_nu equals
/// downalpha(chain) theta_mu, independently of the chain.
Verdict check_basis_step_and_path(const ScanResult& scan, const ComponentIndex& index, const Solver& solver,
                                  const CheckOptions& opts = {});

/// theta's from certified balls at distance 2 are independent; theta's
/// within one component are dependent.
Verdict check_independency(const ScanResult& scan, const ComponentIndex& index, const Solver& solver,
                           const CheckOptions& opts = {});

/// Sections of certified balls are unimodal with a unique peak.
Verdict check_sections(const ScanResult& scan, const ComponentIndex& index);

struct BasisResult {
    Multiplicity mu;
    Multiplicity nu;
    Derivation first;  // alpha_{mu,kappa} theta_mu
    Derivation second; // alpha_{nu,kappa} theta_nu
    HomogPoly alpha_mu;
    HomogPoly alpha_nu;
    SaitoVerdict saito;
};

/// prod_H alpha_H^max(kappa_H - mu_H, 0).
HomogPoly multiplier_between(const Arrangement& arr, const Multiplicity& mu, const Multiplicity& kappa);

/// Basis {alpha_{mu,kappa} theta_mu, alpha_{nu,kappa} theta_nu} of D(A, kappa)
/// for mu, nu in distinct components with delta(mu) + delta(nu) = d(mu, nu)
/// and mu ^ nu <= kappa <= mu v nu. Throws PreconditionViolated naming the
/// failed clause, or VerificationFailed if the result is not a basis.
/// same_component, when given, decides whether mu and nu share a component.
BasisResult construct_basis_between(const Solver& solver, const Multiplicity& mu, const Multiplicity& nu,
                                    const Multiplicity& kappa, const Derivation& theta_mu, const Derivation& theta_nu,
                                    std::optional<bool> same_component = std::nullopt);

struct CenterEntry {
    Multiplicity center;
    int delta = 0;
    int component = 0;
};

std::vector<CenterEntry> center_index(const ScanResult& scan, const ComponentIndex& index);

/// Every exactly solved support point of the scan with its component.
std::vector<CenterEntry> support_index(const ScanResult& scan, const ComponentIndex& index);

/// Basis of D(A, kappa) for balanced kappa from a pair of centers, searching
/// pairs by growing distance from kappa. Balanced kappa supported on at most
/// two lines lie between no two centers; for those the pair is taken from
/// fallback (independent theta's from distinct components) when given.
/// Throws NoCenterPairFound.
BasisResult basis_for(const Solver& solver, const Multiplicity& kappa, const std::vector<CenterEntry>& centers,
                      const std::vector<CenterEntry>* fallback = nullptr);

/// A candidate assignment mu -> vartheta_mu with membership checked on entry.
class CandidateMap {
public:
    explicit CandidateMap(const Arrangement& arr) : arr_(&arr) {}

    /// False (and the entry is recorded as rejected) unless theta lies in D(A, mu).
    bool add(const Multiplicity& mu, const Derivation& theta);

    const std::map<Multiplicity, Derivation>& entries() const { return entries_; }
    const std::vector<Multiplicity>& rejected() const { return rejected_; }
    bool contains(const Multiplicity& mu) const { return entries_.count(mu) > 0; }
    const Derivation& at(const Multiplicity& mu) const { return entries_.at(mu); }
    /// |mu| - 2 deg vartheta_mu.
    int delta_prime(const Multiplicity& mu) const;

private:
    const Arrangement* arr_;
    std::map<Multiplicity, Derivation> entries_;
    std::vector<Multiplicity> rejected_;
};

struct CriterionResult {
    /// Pass iff the criterion's independence condition holds for the input.
    Verdict verdict;
    /// Whether condition <=> (input equals the scan-derived truth); set when a scan is supplied.
    std::optional<bool> agrees_with_scan;
};

/// Balanced points of the box.
std::vector<Multiplicity> balanced_window(const Box& box);

/// Connected components of a point set under covering edges between its members.
std::vector<std::vector<Multiplicity>> induced_components(const std::vector<Multiplicity>& points);

/// Support criterion. N = candidate domain must lie in the balanced window,
/// window \ N may not contain a connected pair, and deg vartheta_mu < |mu|/2.
/// Throws HypothesisViolated. Components of N are taken in the N-induced
/// covering graph; their mutual distance is measured in the lattice.
CriterionResult certify_support(const Solver& solver, const CandidateMap& candidate,
                                const std::vector<Multiplicity>& window, const ScanResult* trusted = nullptr,
                                const CheckOptions& opts = {});

/// Center criterion. Requires delta' > 0 on N, pairwise disjoint balls
/// B(mu, delta'(mu)), and no connected pair in window minus their union.
/// Throws HypothesisViolated. With a trusted scan, the truth is "N is the set
/// of certified centers whose balls meet the window and vartheta = theta".
CriterionResult certify_centers(const Solver& solver, const CandidateMap& candidate,
                                const std::vector<Multiplicity>& window, const ScanResult* trusted = nullptr,
                                const ComponentIndex* index = nullptr);

struct Reconstruction {
    std::vector<std::vector<Multiplicity>> classes;
    Verdict verdict;
};

/// Classes of odd-size balanced window points under the closure of
/// "dependent theta's at distance 2", compared with the finite components of
/// the scan.
Reconstruction reconstruct_components(const Solver& solver, const std::vector<Multiplicity>& window,
                                      const ScanResult& trusted, const ComponentIndex& index);

/// Every basis produced over the window passes Saito's criterion: full_basis
/// at each point, basis_for at each balanced point, and
/// construct_basis_between for each feasible pair of centers in the window
/// at every kappa of their interval.
Verdict check_saito_bases(const Solver& solver, const ScanResult& scan, const ComponentIndex& index, const Box& window,
                          unsigned jobs = 1);

/// Ground-truth round trips of the three criteria on the balanced points of
/// the window: theta on the support, theta on the centers, and the partition
/// of odd points. Each must pass and agree with the scan.
std::vector<Verdict> check_criteria(const Solver& solver, const ScanResult& scan, const ComponentIndex& index,
                                    const Box& window);

} // namespace mlat
