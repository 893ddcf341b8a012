#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uamlink/channel.hpp"

namespace uamlink {

/// Per-slot message sizes and the expiry limit in slots.
/// A single size applies to every slot; otherwise slot k uses sizes_bits[k].
struct MessageSchedule {
    std::vector<double> sizes_bits{5e6};
    int expiry_slots = 1;

    double size_at(std::size_t slot) const;
};

/// Throws ConfigError for non-positive or fractional sizes, NotImplementedError for M > 1.
void validate(const MessageSchedule& m);

/// Processing delay added when a link of the given kind is selected.
struct FixedDelays {
    double cellular_s = 0.0;
    double satellite_s = 0.0;

    double of(LinkKind kind) const { return kind == LinkKind::cellular ? cellular_s : satellite_s; }
};

struct LinkSelection {
    LinkKind kind = LinkKind::cellular;
    int node_id = 0;

    bool operator==(const LinkSelection&) const = default;
};

struct AllocationDecision {
    int slot = 0;
    std::optional<LinkSelection> selection;  ///< empty on outage
    int selected_index = -1;                 ///< position in the candidate list, -1 on outage
    double rate_bps = 0.0;
    double delay_s = 0.0;                    ///< +inf on outage
    std::vector<std::uint8_t> assignment;    ///< X_1..X_n, Y_1..Y_m in candidate order

    bool outage() const { return !selection.has_value(); }
};

/// S / r, or +inf when r <= 0. Throws DomainError for S <= 0.
double compute_delay(double size_bits, double rate_bps);

/// Minimizes the selected link's delay S/r + FD subject to exactly one link being chosen.
/// Ties go to cellular before satellite, then to the lower node id. An empty candidate set,
/// or one where every rate is zero, is an outage with zero rate.
AllocationDecision select_link(std::span<const LinkCandidate> candidates, double size_bits,
                               const FixedDelays& fixed = {});

/// Exhaustive enumeration of all 2^(n+m) binary assignments, keeping those that select
/// exactly one link. Test-scale reference for select_link; throws DomainError above 20 links.
AllocationDecision bilp_oracle(std::span<const LinkCandidate> candidates, double size_bits,
                               const FixedDelays& fixed = {});

}  // namespace uamlink
