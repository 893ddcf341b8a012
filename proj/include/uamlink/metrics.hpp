#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uamlink/allocator.hpp"
#include "uamlink/geo.hpp"

namespace uamlink {

/// Numerator reading for the average percentage data loss.
///  - capped: delivered(p) = r_opt(p) * min(delay(p), M dt), at most S(p). Partial
///    transfers lose the remainder at expiry.
///  - literal: delivered(p) = r_opt(p) * delay(p), which is S(p) for any live link, so
///    only outages count as loss. Kept for comparison.
enum class ApdlMode { capped, literal };

struct SlotRecord {
    int slot = 0;
    double time_s = 0.0;
    GeodeticPosition position;
    int cellular_visible = 0;
    int satellites_visible = 0;
    std::optional<LinkSelection> selection;
    double rate_bps = 0.0;
    double delay_s = 0.0;  ///< +inf on outage
    double size_bits = 0.0;
    double delivered_bits = 0.0;
    double lost_bits = 0.0;
    double apdl_pct = 0.0;

    bool operator==(const SlotRecord&) const = default;
};

struct TripResult {
    std::vector<SlotRecord> records;
    double slot_duration_s = 0.0;
    int expiry_slots = 1;
    double cdl_bits = 0.0;
    double trip_delay_s = 0.0;
    double total_bits = 0.0;
    std::vector<double> apdl_series;

    double final_apdl() const { return apdl_series.empty() ? 0.0 : apdl_series.back(); }

    bool operator==(const TripResult&) const = default;
};

struct SlotLoss {
    double delivered_bits = 0.0;
    double lost_bits = 0.0;
};

/// delivered = min(S, floor(r M dt)) whole bits, lost = S - delivered.
SlotLoss slot_loss(double size_bits, double rate_bps, double slot_duration_s, int expiry_slots);

double cumulative_data_loss(std::span<const SlotRecord> records);

/// Sum of per-slot delays capped at M dt; outages contribute the cap.
double trip_delay(std::span<const SlotRecord> records, double slot_duration_s, int expiry_slots);

/// Percentage of bits lost over slots 0..up_to. Throws DomainError if up_to is out of range.
double apdl(std::span<const SlotRecord> records, std::size_t up_to, double slot_duration_s,
            int expiry_slots, ApdlMode mode = ApdlMode::capped);

/// APDL for every prefix, in one pass.
std::vector<double> apdl_series(std::span<const SlotRecord> records, double slot_duration_s,
                                int expiry_slots, ApdlMode mode = ApdlMode::capped);

/// Fills apdl_pct on each record and computes the trip aggregates.
TripResult summarize(std::vector<SlotRecord> records, double slot_duration_s, int expiry_slots,
                     ApdlMode mode = ApdlMode::capped);

}  // namespace uamlink
