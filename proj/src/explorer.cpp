#include "mlat/explorer.hpp"

#include "mlat/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

namespace mlat {

ScanResult::ScanResult(Arrangement arr, Box box, std::vector<PointRecord> points)
    : arr_(std::move(arr)), box_(std::move(box)), points_(std::move(points))
{
    if (box_.dim() != arr_.size())
        throw Error(Errc::LengthMismatch, "box of dimension " + std::to_string(box_.dim()) + " for " +
                                              std::to_string(arr_.size()) + " lines");
    if (points_.size() != box_.point_count())
        throw Error(Errc::PreconditionViolated, "scan table has " + std::to_string(points_.size()) +
                                                    " rows, box has " + std::to_string(box_.point_count()));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].mu != box_.point_at(i))
            throw Error(Errc::PreconditionViolated, "scan row " + std::to_string(i) + " is " +
                                                        points_[i].mu.to_string() + ", expected " +
                                                        box_.point_at(i).to_string());
    }
}

ScanResult scan(const Solver& solver, const Box& box, const ScanOptions& opts)
{
    const auto& arr = solver.arrangement();
    if (box.dim() != arr.size())
        throw Error(Errc::LengthMismatch, "box of dimension " + std::to_string(box.dim()) + " for " +
                                              std::to_string(arr.size()) + " lines");
    const auto start = std::chrono::steady_clock::now();
    std::vector<PointRecord> rows(box.point_count());
    parallel_for(rows.size(), opts.jobs, [&](std::size_t i) {
        PointRecord rec;
        rec.mu = box.point_at(i);
        auto cls = classify_point(rec.mu);
        if (opts.balanced_only && !cls.balanced()) {
            const int n = rec.mu.total();
            const int mh = rec.mu[*cls.cone_line];
            rec.d1 = n - mh;
            rec.d2 = mh;
            rec.delta = rec.d2 - rec.d1;
            rec.estimated = true;
        } else {
            try {
                auto r = solver.exponents(rec.mu);
                rec.d1 = r.d1;
                rec.d2 = r.d2;
                rec.delta = r.delta;
            } catch (const Error& e) {
                throw Error(e.code(), "at mu = " + rec.mu.to_string() + ": " + e.what());
            }
        }
        rows[i] = std::move(rec);
    });
    ScanResult out(arr, box, std::move(rows));
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.jobs = opts.jobs;
    return out;
}

std::string to_string(ComponentKind kind)
{
    switch (kind) {
    case ComponentKind::CertifiedFiniteBall: return "certified-finite-ball";
    case ComponentKind::ConePortion: return "cone-portion";
    case ComponentKind::BoundaryUndetermined: return "boundary-undetermined";
    }
    return "?";
}

bool Component::contains(const Multiplicity& mu) const { return std::binary_search(members.begin(), members.end(), mu); }

const Component* ComponentIndex::find(const Box& box, const Multiplicity& mu) const
{
    if (!box.contains(mu))
        return nullptr;
    int id = component_of[box.index_of(mu)];
    return id < 0 ? nullptr : &components[static_cast<std::size_t>(id)];
}

namespace {

bool closed_in_box(const Multiplicity& mu, const Box& box)
{
    for (std::size_t h = 0; h < mu.dim(); ++h) {
        if (mu[h] >= box.upper()[h])
            return false;
    }
    return true;
}

void classify(Component& c, const ScanResult& scan)
{
    int best = -1;
    bool all_balanced = true;
    bool closed = true;
    bool exact = true;
    for (const auto& m : c.members) {
        const auto& rec = scan.at(m);
        exact = exact && !rec.estimated;
        auto cls = classify_point(m);
        if (!cls.balanced()) {
            all_balanced = false;
            if (!c.cone_line)
                c.cone_line = cls.cone_line;
        }
        closed = closed && closed_in_box(m, scan.box());
        if (rec.delta > best) {
            best = rec.delta;
            c.maximizers.clear();
        }
        if (rec.delta == best)
            c.maximizers.push_back(m);
    }
    if (c.cone_line) {
        c.kind = ComponentKind::ConePortion;
        c.certificate = "contains cone points of line " + std::to_string(*c.cone_line);
    } else if (all_balanced && closed && exact) {
        c.kind = ComponentKind::CertifiedFiniteBall;
        c.center = c.maximizers.front();
        c.radius = best;
        c.certificate = "balanced; all covering neighbours inside the box";
    } else {
        c.kind = ComponentKind::BoundaryUndetermined;
        c.certificate = closed ? "estimated values" : "touches the upper box boundary";
    }
}

} // namespace

ComponentIndex components(const ScanResult& scan)
{
    const Box& box = scan.box();
    ComponentIndex idx;
    idx.component_of.assign(box.point_count(), -1);
    for (std::size_t start = 0; start < box.point_count(); ++start) {
        if (scan.points()[start].delta <= 0 || idx.component_of[start] >= 0)
            continue;
        Component c;
        c.id = static_cast<int>(idx.components.size());
        std::deque<std::size_t> queue{start};
        idx.component_of[start] = c.id;
        std::vector<std::size_t> seen;
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            seen.push_back(cur);
            for (const auto& nb : covering_neighbors(scan.points()[cur].mu, box)) {
                auto j = box.index_of(nb.point);
                if (scan.points()[j].delta > 0 && idx.component_of[j] < 0) {
                    idx.component_of[j] = c.id;
                    queue.push_back(j);
                }
            }
        }
        std::sort(seen.begin(), seen.end());
        for (auto i : seen)
            c.members.push_back(scan.points()[i].mu);
        classify(c, scan);
        idx.components.push_back(std::move(c));
    }
    return idx;
}

int component_distance(const Component& a, const Component& b)
{
    int best = -1;
    for (const auto& x : a.members) {
        for (const auto& y : b.members) {
            int d = distance(x, y);
            if (best < 0 || d < best)
                best = d;
        }
    }
    return best;
}

std::vector<CenterReport> centers(const ScanResult& scan, const ComponentIndex& index)
{
    std::vector<CenterReport> out;
    for (const auto& c : index.components) {
        if (c.kind != ComponentKind::CertifiedFiniteBall)
            continue;
        CenterReport rep;
        rep.component = c.id;
        rep.center = *c.center;
        rep.delta = scan.delta(*c.center);
        if (c.maximizers.size() > 1) {
            rep.error = "delta maximum " + std::to_string(rep.delta) + " attained at " +
                        std::to_string(c.maximizers.size()) + " points";
            for (const auto& m : c.maximizers)
                rep.error += " (" + m.to_string() + ")";
        }
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<Multiplicity> section(const Component& c, const Multiplicity& mu, std::size_t h)
{
    if (!c.contains(mu))
        throw Error(Errc::PointNotInComponent, mu.to_string() + " is not in component " + std::to_string(c.id));
    std::vector<Multiplicity> out;
    for (const auto& m : c.members) {
        bool same = true;
        for (std::size_t g = 0; g < m.dim() && same; ++g)
            same = g == h || m[g] == mu[g];
        if (same)
            out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [h](const Multiplicity& a, const Multiplicity& b) { return a[h] < b[h]; });
    return out;
}

Multiplicity peak_element(const std::vector<Multiplicity>& sec, const std::vector<int>& deltas)
{
    if (sec.empty() || sec.size() != deltas.size())
        throw Error(Errc::PreconditionViolated, "section and delta values must be nonempty and aligned");
    auto top = std::max_element(deltas.begin(), deltas.end());
    const auto peak = static_cast<std::size_t>(top - deltas.begin());
    if (std::count(deltas.begin(), deltas.end(), *top) > 1)
        throw Error(Errc::NotUnimodal, "maximum " + std::to_string(*top) + " is attained more than once");
    for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
        bool ok = i < peak ? deltas[i] <= deltas[i + 1] : deltas[i] >= deltas[i + 1];
        if (!ok)
            throw Error(Errc::NotUnimodal, "delta values change direction away from the peak at " +
                                               sec[i + 1].to_string());
    }
    return sec[peak];
}

} // namespace mlat
