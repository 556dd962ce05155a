#include "setmap/lll.hpp"

#include "setmap/combinat.hpp"
#include "setmap/rng.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace setmap {

std::uint64_t required_host_size(const Pattern& p)
{
    if (p.has_isolated_vertex())
        throw std::invalid_argument("required_host_size: pattern has an isolated vertex");
    return 10ull * p.uniformity() * p.uniformity() * p.vertex_count() * p.max_degree();
}

LllCondition lll_condition(const Pattern& p, std::uint64_t host)
{
    LllCondition cond;
    cond.p = static_cast<double>(p.uniformity()) / static_cast<double>(host);
    cond.d = 3.0 * p.uniformity() * p.max_degree() * p.vertex_count();
    cond.holds = std::numbers::e * cond.p * (cond.d + 1.0) <= 1.0;
    return cond;
}

LllProblem::LllProblem(Pattern p, SetMapping mapping)
    : pattern(std::move(p)), f(std::move(mapping))
{
    if (f.arity() != pattern.uniformity())
        throw std::invalid_argument("LllProblem: mapping arity must match the pattern");
    if (f.image_size() != f.arity())
        throw std::invalid_argument("LllProblem: image size must equal the arity (l = k)");
    if (f.overlap_budget() != 0)
        throw std::invalid_argument("LllProblem: mapping must have a = 0");
    if (f.host_size() < pattern.vertex_count())
        throw std::invalid_argument("LllProblem: host smaller than the pattern");
}

std::uint64_t LllProblem::event_count() const noexcept
{
    const std::uint64_t n = pattern.vertex_count();
    return binom(n, 2) +
           static_cast<std::uint64_t>(pattern.edge_count()) * (n - pattern.uniformity());
}

std::uint64_t event_id(const LllProblem& prob, const LllEvent& ev)
{
    const std::uint64_t n = prob.pattern.vertex_count();
    if (ev.kind == LllEvent::Kind::collision) {
        // lex rank of (i, j), i < j
        return ev.i * n - (static_cast<std::uint64_t>(ev.i) * (ev.i + 1)) / 2 +
               (ev.j - ev.i - 1);
    }
    const auto& edge = prob.pattern.edges()[ev.edge_index];
    std::uint64_t pos = ev.vertex;
    for (const auto v : edge)
        if (v < ev.vertex)
            --pos;
    return binom(n, 2) +
           static_cast<std::uint64_t>(ev.edge_index) * (n - prob.pattern.uniformity()) + pos;
}

std::optional<LllEvent> find_violated_event(const std::vector<std::uint32_t>& assignment,
                                            const LllProblem& prob)
{
    const std::uint32_t n = prob.pattern.vertex_count();
    if (assignment.size() != n)
        throw std::invalid_argument("find_violated_event: assignment size mismatch");
    for (const auto x : assignment)
        if (x >= prob.f.host_size())
            throw std::invalid_argument("find_violated_event: assignment out of range");

    for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (assignment[i] == assignment[j])
                return LllEvent{LllEvent::Kind::collision, i, j, 0, 0};

    // assignment is injective here, so every image below is a valid edge
    std::vector<std::uint32_t> host_edge(prob.pattern.uniformity());
    std::vector<std::uint32_t> img;
    for (std::uint32_t e = 0; e < prob.pattern.edge_count(); ++e) {
        const auto& ed = prob.pattern.edges()[e];
        for (std::size_t t = 0; t < ed.size(); ++t)
            host_edge[t] = assignment[ed[t]];
        std::sort(host_edge.begin(), host_edge.end());
        prob.f.eval_unchecked(host_edge, img);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (std::find(ed.begin(), ed.end(), i) != ed.end())
                continue;
            if (std::find(img.begin(), img.end(), assignment[i]) != img.end())
                return LllEvent{LllEvent::Kind::image_hit, 0, 0, e, i};
        }
    }
    return std::nullopt;
}

MoserTardosResult moser_tardos(const LllProblem& prob, std::uint64_t seed,
                               std::uint64_t max_resamples)
{
    const std::uint32_t n = prob.pattern.vertex_count();
    const std::uint32_t host = prob.f.host_size();
    if (max_resamples == 0)
        max_resamples = 100 * prob.event_count();

    Rng rng(absorb(seed, 0x6d746c6c)); // "mtll"
    MoserTardosResult res;
    res.assignment.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        res.assignment[i] = static_cast<std::uint32_t>(rng.below(host));
    res.event_histogram.assign(prob.event_count(), 0);

    while (true) {
        const auto ev = find_violated_event(res.assignment, prob);
        if (!ev) {
            res.success = true;
            return res;
        }
        if (res.iterations >= max_resamples) {
            res.last_event = ev;
            return res;
        }
        ++res.iterations;
        ++res.event_histogram[event_id(prob, *ev)];
        if (ev->kind == LllEvent::Kind::collision) {
            ++res.collision_resamples;
            res.assignment[ev->i] = static_cast<std::uint32_t>(rng.below(host));
            res.assignment[ev->j] = static_cast<std::uint32_t>(rng.below(host));
        } else {
            ++res.image_resamples;
            // the hit variable, then the edge's variables in ascending order
            res.assignment[ev->vertex] = static_cast<std::uint32_t>(rng.below(host));
            for (const auto v : prob.pattern.edges()[ev->edge_index])
                res.assignment[v] = static_cast<std::uint32_t>(rng.below(host));
        }
    }
}

} // namespace setmap
