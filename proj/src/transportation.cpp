#include "lipfree/transportation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipfree {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TransportationResult solve_transportation(const TransportationInstance& in,
                                          Tolerances tol) {
    std::size_t m = in.supply.size(), k = in.demand.size();
    if (in.cost.size() != m * k) throw std::invalid_argument("cost matrix size mismatch");
    double total_supply = 0, total_demand = 0;
    for (double s : in.supply) {
        if (!(s >= 0) || !std::isfinite(s))
            throw std::invalid_argument("supplies must be finite and nonnegative");
        total_supply += s;
    }
    for (double d : in.demand) {
        if (!(d >= 0) || !std::isfinite(d))
            throw std::invalid_argument("demands must be finite and nonnegative");
        total_demand += d;
    }
    for (double c : in.cost)
        if (!(c >= 0) || !std::isfinite(c))
            throw std::invalid_argument("costs must be finite and nonnegative");
    if (std::fabs(total_supply - total_demand) >
        tol.tau * std::max(1.0, total_supply))
        throw std::domain_error("unbalanced instance: supply " +
                                std::to_string(total_supply) + " vs demand " +
                                std::to_string(total_demand));

    TransportationResult out;
    out.flow.assign(m * k, 0.0);
    out.potential_source.assign(m, 0.0);
    out.potential_sink.assign(k, 0.0);
    if (m == 0 || k == 0 || total_supply <= 0) return out;

    std::vector<double> rs = in.supply;  // residual supply
    std::vector<double> rd = in.demand;  // residual demand
    auto& pi_s = out.potential_source;
    auto& pi_t = out.potential_sink;
    const double mass_eps = 1e-13 * (1.0 + total_supply);

    std::size_t nodes = m + k;  // sources first, then sinks
    std::vector<double> dist(nodes);
    std::vector<std::size_t> pred(nodes);
    std::vector<bool> done(nodes);

    for (;;) {
        double remaining = 0;
        for (double s : rs) remaining += s;
        if (remaining <= mass_eps) break;

        // Dijkstra over reduced costs from every source that still has
        // mass. Potentials keep all reduced costs nonnegative, so plain
        // Dijkstra stays exact. Deterministic: smallest index wins ties.
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(pred.begin(), pred.end(), nodes);
        std::fill(done.begin(), done.end(), false);
        for (std::size_t i = 0; i < m; ++i)
            if (rs[i] > mass_eps) dist[i] = 0;
        for (;;) {
            std::size_t u = nodes;
            for (std::size_t v = 0; v < nodes; ++v)
                if (!done[v] && dist[v] < kInf && (u == nodes || dist[v] < dist[u]))
                    u = v;
            if (u == nodes) break;
            done[u] = true;
            if (u < m) {
                for (std::size_t j = 0; j < k; ++j) {
                    double rc = in.cost[u * k + j] + pi_s[u] - pi_t[j];
                    if (rc < 0) rc = 0;  // clamp potential drift
                    if (dist[u] + rc < dist[m + j]) {
                        dist[m + j] = dist[u] + rc;
                        pred[m + j] = u;
                    }
                }
            } else {
                std::size_t j = u - m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (out.flow[i * k + j] <= mass_eps) continue;
                    double rc = -in.cost[i * k + j] + pi_t[j] - pi_s[i];
                    if (rc < 0) rc = 0;
                    if (dist[u] + rc < dist[i]) {
                        dist[i] = dist[u] + rc;
                        pred[i] = u;
                    }
                }
            }
        }

        std::size_t jstar = k;
        for (std::size_t j = 0; j < k; ++j)
            if (rd[j] > mass_eps && dist[m + j] < kInf &&
                (jstar == k || dist[m + j] < dist[m + jstar]))
                jstar = j;
        if (jstar == k) break;  // residual dust only

        // Bottleneck along the predecessor chain back to a source.
        double push = rd[jstar];
        std::size_t cur = m + jstar;
        while (pred[cur] != nodes) {
            std::size_t p = pred[cur];
            if (cur >= m)
                ;  // forward arc p -> sink, uncapacitated
            else
                push = std::min(push, out.flow[cur * k + (p - m)]);
            cur = p;
        }
        push = std::min(push, rs[cur]);

        cur = m + jstar;
        while (pred[cur] != nodes) {
            std::size_t p = pred[cur];
            if (cur >= m)
                out.flow[p * k + (cur - m)] += push;
            else
                out.flow[cur * k + (p - m)] -= push;
            cur = p;
        }
        rs[cur] -= push;
        rd[jstar] -= push;
        ++out.augmentations;

        double cap = dist[m + jstar];
        for (std::size_t i = 0; i < m; ++i)
            if (dist[i] < kInf) pi_s[i] += std::min(dist[i], cap);
        for (std::size_t j = 0; j < k; ++j)
            if (dist[m + j] < kInf) pi_t[j] += std::min(dist[m + j], cap);
    }

    double c = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) c += out.flow[i * k + j] * in.cost[i * k + j];
    out.total_cost = c;
    return out;
}

}  // namespace lipfree
