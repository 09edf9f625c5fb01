#include "mlat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mlat {

namespace {

void check_same_dim(const Multiplicity& mu, const Multiplicity& nu)
{
    if (mu.dim() != nu.dim())
        throw Error(Errc::LengthMismatch, mu.to_string() + " vs " + nu.to_string());
}

} // namespace

Multiplicity::Multiplicity(std::vector<int> entries) : e_(std::move(entries))
{
    for (int v : e_) {
        if (v < 0)
            throw Error(Errc::PreconditionViolated, "negative multiplicity " + std::to_string(v));
    }
    total_ = std::accumulate(e_.begin(), e_.end(), 0);
}

Multiplicity Multiplicity::parse(const std::string& text)
{
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int x = std::stoi(item, &used);
            if (used != item.size() || x < 0)
                throw std::invalid_argument(item);
            v.push_back(x);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "bad multiplicity '" + text + "'");
        }
    }
    if (v.empty())
        throw Error(Errc::ParseError, "empty multiplicity");
    return Multiplicity(std::move(v));
}

int Multiplicity::max_entry() const { return e_.empty() ? 0 : *std::max_element(e_.begin(), e_.end()); }

Multiplicity Multiplicity::shifted(std::size_t i, int delta) const
{
    auto v = e_;
    v[i] += delta;
    return Multiplicity(std::move(v));
}

std::string Multiplicity::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(e_[i]);
    }
    return s;
}

std::size_t MultiplicityHash::operator()(const Multiplicity& m) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (int v : m.entries())
        h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
}

bool leq(const Multiplicity& mu, const Multiplicity& nu)
{
    check_same_dim(mu, nu);
    for (std::size_t i = 0; i < mu.dim(); ++i) {
        if (mu[i] > nu[i])
            return false;
    }
    return true;
}

bool covered_by(const Multiplicity& mu, const Multiplicity& nu) { return leq(mu, nu) && mu.total() + 1 == nu.total(); }

int distance(const Multiplicity& mu, const Multiplicity& nu)
{
    check_same_dim(mu, nu);
    int d = 0;
    for (std::size_t i = 0; i < mu.dim(); ++i)
        d += std::abs(mu[i] - nu[i]);
    return d;
}

std::pair<Multiplicity, Multiplicity> meet_join(const Multiplicity& mu, const Multiplicity& nu)
{
    check_same_dim(mu, nu);
    std::vector<int> lo(mu.dim()), hi(mu.dim());
    for (std::size_t i = 0; i < mu.dim(); ++i) {
        lo[i] = std::min(mu[i], nu[i]);
        hi[i] = std::max(mu[i], nu[i]);
    }
    return {Multiplicity(std::move(lo)), Multiplicity(std::move(hi))};
}

// ---------------------------------------------------------------------------
// Box

Box::Box(std::vector<int> upper) : upper_(std::move(upper))
{
    for (int b : upper_) {
        if (b < 0)
            throw Error(Errc::PreconditionViolated, "negative box bound");
    }
}

bool Box::contains(const Multiplicity& mu) const
{
    if (mu.dim() != dim())
        return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (mu[i] > upper_[i])
            return false;
    }
    return true;
}

std::size_t Box::point_count() const
{
    std::size_t n = 1;
    for (int b : upper_)
        n *= static_cast<std::size_t>(b + 1);
    return n;
}

std::size_t Box::index_of(const Multiplicity& mu) const
{
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        idx = idx * static_cast<std::size_t>(upper_[i] + 1) + static_cast<std::size_t>(mu[i]);
    return idx;
}

Multiplicity Box::point_at(std::size_t index) const
{
    std::vector<int> v(dim());
    for (std::size_t i = dim(); i-- > 0;) {
        auto radix = static_cast<std::size_t>(upper_[i] + 1);
        v[i] = static_cast<int>(index % radix);
        index /= radix;
    }
    return Multiplicity(std::move(v));
}

std::string Box::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < upper_.size(); ++i)
        s += (i ? "," : "") + std::to_string(upper_[i]);
    return s;
}

std::vector<Neighbor> covering_neighbors(const Multiplicity& mu, const Box& box)
{
    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < mu.dim(); ++i) {
        if (mu[i] > 0)
            out.push_back({mu.shifted(i, -1), i, Direction::Down});
        if (mu[i] < box.upper()[i])
            out.push_back({mu.shifted(i, +1), i, Direction::Up});
    }
    return out;
}

PointClass classify_point(const Multiplicity& mu)
{
    for (std::size_t i = 0; i < mu.dim(); ++i) {
        if (2 * mu[i] > mu.total())
            return {i};
    }
    return {};
}

namespace {

void ball_rec(const Multiplicity& center, int radius, const Box* box, std::vector<int>& cur, std::size_t pos,
              int used, std::vector<Multiplicity>& out)
{
    if (pos == center.dim()) {
        out.emplace_back(cur);
        return;
    }
    const int c = center[pos];
    const int slack = radius - 1 - used;
    const int lo = std::max(0, c - slack);
    int hi = c + slack;
    if (box)
        hi = std::min(hi, box->upper()[pos]);
    for (int v = lo; v <= hi; ++v) {
        cur[pos] = v;
        ball_rec(center, radius, box, cur, pos + 1, used + std::abs(v - c), out);
    }
}

} // namespace

std::vector<Multiplicity> ball(const Multiplicity& mu, int radius, const Box& box)
{
    std::vector<Multiplicity> out;
    if (radius <= 0)
        return out;
    std::vector<int> cur(mu.dim());
    ball_rec(mu, radius, &box, cur, 0, 0, out);
    return out;
}

std::vector<Multiplicity> ball(const Multiplicity& mu, int radius)
{
    std::vector<Multiplicity> out;
    if (radius <= 0)
        return out;
    std::vector<int> cur(mu.dim());
    ball_rec(mu, radius, nullptr, cur, 0, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Chains

Chain::Chain(std::vector<Multiplicity> points) : points_(std::move(points))
{
    if (points_.empty())
        throw Error(Errc::PreconditionViolated, "empty chain");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        if (!covered_by(points_[i], points_[i + 1]))
            throw Error(Errc::PreconditionViolated,
                        points_[i].to_string() + " is not covered by " + points_[i + 1].to_string());
    }
}

std::size_t Chain::step_line(std::size_t i) const
{
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    for (std::size_t h = 0; h < a.dim(); ++h) {
        if (a[h] != b[h])
            return h;
    }
    throw Error(Errc::InternalInconsistency, "chain step without change");
}

namespace {

Chain build_chain(const Multiplicity& mu, const Multiplicity& nu, bool lowest_first)
{
    if (mu.dim() != nu.dim() || !leq(mu, nu))
        throw Error(Errc::NotComparable, mu.to_string() + " is not below " + nu.to_string());
    std::vector<Multiplicity> pts{mu};
    Multiplicity cur = mu;
    const std::size_t n = mu.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t h = lowest_first ? k : n - 1 - k;
        while (cur[h] < nu[h]) {
            cur = cur.shifted(h, +1);
            pts.push_back(cur);
        }
    }
    return Chain(std::move(pts));
}

} // namespace

Chain saturated_chain(const Multiplicity& mu, const Multiplicity& nu) { return build_chain(mu, nu, true); }

Chain saturated_chain_reversed(const Multiplicity& mu, const Multiplicity& nu) { return build_chain(mu, nu, false); }

HomogPoly downalpha(const Arrangement& arr, const Chain& chain, std::span<const int> deltas)
{
    if (deltas.size() != chain.size())
        throw Error(Errc::LengthMismatch, "chain of " + std::to_string(chain.size()) + " points with " +
                                              std::to_string(deltas.size()) + " delta values");
    HomogPoly r = HomogPoly::one();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (deltas[i] > deltas[i + 1])
            r = r * arr[chain.step_line(i)].as_poly();
    }
    return r;
}

} // namespace mlat
