#include "uamlink/allocator.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict preference order for equal objective values.
bool tie_preferred(const LinkCandidate& a, const LinkCandidate& b) {
    if (a.kind != b.kind) return a.kind == LinkKind::cellular;
    return a.node_id < b.node_id;
}

AllocationDecision outage(int slot, std::size_t n) {
    AllocationDecision d;
    d.slot = slot;
    d.rate_bps = 0.0;
    d.delay_s = kInf;
    d.assignment.assign(n, 0);
    return d;
}

AllocationDecision selected(std::span<const LinkCandidate> candidates, std::size_t index, double delay) {
    const LinkCandidate& c = candidates[index];
    AllocationDecision d = outage(c.slot, candidates.size());
    d.selection = LinkSelection{c.kind, c.node_id};
    d.selected_index = static_cast<int>(index);
    d.rate_bps = c.rate_bps;
    d.delay_s = delay;
    d.assignment[index] = 1;
    return d;
}

int slot_of(std::span<const LinkCandidate> candidates) {
    return candidates.empty() ? 0 : candidates.front().slot;
}

}  // namespace

double MessageSchedule::size_at(std::size_t slot) const {
    if (sizes_bits.size() == 1) return sizes_bits.front();
    if (slot >= sizes_bits.size())
        throw DomainError("no message size for slot " + std::to_string(slot));
    return sizes_bits[slot];
}

void validate(const MessageSchedule& m) {
    if (m.sizes_bits.empty()) throw ConfigError("message.size_bits", "needs at least one size");
    for (double s : m.sizes_bits) {
        if (!(s > 0.0 && std::isfinite(s)))
            throw ConfigError("message.size_bits", "sizes must be positive");
        if (s != std::floor(s) || s > 9.0e15)
            throw ConfigError("message.size_bits", "sizes must be whole numbers of bits below 9e15");
    }
    if (m.expiry_slots < 1) throw ConfigError("message.expiry_slots", "must be >= 1");
    if (m.expiry_slots > 1)
        throw NotImplementedError("message.expiry_slots",
                                  "expiry beyond one slot requires caching, which is not implemented");
}

double compute_delay(double size_bits, double rate_bps) {
    if (!(size_bits > 0.0)) throw DomainError("message size must be > 0");
    return rate_bps > 0.0 ? size_bits / rate_bps : kInf;
}

AllocationDecision select_link(std::span<const LinkCandidate> candidates, double size_bits,
                               const FixedDelays& fixed) {
    if (!(size_bits > 0.0)) throw DomainError("message size must be > 0");
    std::size_t best = candidates.size();
    double best_delay = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const LinkCandidate& c = candidates[i];
        if (!(c.rate_bps > 0.0)) continue;
        const double delay = compute_delay(size_bits, c.rate_bps) + fixed.of(c.kind);
        if (best == candidates.size() || delay < best_delay ||
            (delay == best_delay && tie_preferred(c, candidates[best]))) {
            best = i;
            best_delay = delay;
        }
    }
    if (best == candidates.size()) return outage(slot_of(candidates), candidates.size());
    return selected(candidates, best, best_delay);
}

AllocationDecision bilp_oracle(std::span<const LinkCandidate> candidates, double size_bits,
                               const FixedDelays& fixed) {
    if (!(size_bits > 0.0)) throw DomainError("message size must be > 0");
    const std::size_t n = candidates.size();
    if (n > 20) throw DomainError("BILP oracle is limited to 20 links, got " + std::to_string(n));

    const std::uint32_t assignments = std::uint32_t{1} << n;
    std::uint32_t best_mask = 0;
    double best_objective = kInf;
    for (std::uint32_t mask = 1; mask < assignments; ++mask) {
        if (std::popcount(mask) != 1) continue;
        // Objective sum over the links whose coefficient is 1.
        double objective = 0.0;
        std::size_t chosen = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            objective += compute_delay(size_bits, candidates[i].rate_bps) + fixed.of(candidates[i].kind);
            chosen = i;
        }
        if (objective == kInf) continue;
        const bool better = best_mask == 0 || objective < best_objective ||
                            (objective == best_objective &&
                             tie_preferred(candidates[chosen],
                                           candidates[static_cast<std::size_t>(std::countr_zero(best_mask))]));
        if (better) {
            best_mask = mask;
            best_objective = objective;
        }
    }
    if (best_mask == 0) return outage(slot_of(candidates), n);
    return selected(candidates, static_cast<std::size_t>(std::countr_zero(best_mask)), best_objective);
}

}  // namespace uamlink
