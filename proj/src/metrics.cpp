#include "uamlink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

// r * min(S/r, M dt) capped at S equals min(S, r M dt); counted in whole bits like slot_loss.
double delivered_for_apdl(const SlotRecord& r, double dt, int expiry, ApdlMode mode) {
    if (!(r.rate_bps > 0.0)) return 0.0;
    if (mode == ApdlMode::literal) return r.size_bits;
    return slot_loss(r.size_bits, r.rate_bps, dt, expiry).delivered_bits;
}

}  // namespace

SlotLoss slot_loss(double size_bits, double rate_bps, double slot_duration_s, int expiry_slots) {
    const double capacity = rate_bps > 0.0 ? std::floor(rate_bps * expiry_slots * slot_duration_s) : 0.0;
    const double delivered = std::min(size_bits, capacity);
    return {delivered, size_bits - delivered};
}

double cumulative_data_loss(std::span<const SlotRecord> records) {
    double total = 0.0;
    for (const auto& r : records) total += r.lost_bits;
    return total;
}

double trip_delay(std::span<const SlotRecord> records, double slot_duration_s, int expiry_slots) {
    const double cap = expiry_slots * slot_duration_s;
    double total = 0.0;
    for (const auto& r : records) total += r.selection ? std::min(r.delay_s, cap) : cap;
    return total;
}

double apdl(std::span<const SlotRecord> records, std::size_t up_to, double slot_duration_s,
            int expiry_slots, ApdlMode mode) {
    if (up_to >= records.size())
        throw DomainError("APDL prefix end " + std::to_string(up_to) + " beyond " +
                          std::to_string(records.size()) + " records");
    double lost = 0.0, sent = 0.0;
    for (std::size_t p = 0; p <= up_to; ++p) {
        lost += records[p].size_bits - delivered_for_apdl(records[p], slot_duration_s, expiry_slots, mode);
        sent += records[p].size_bits;
    }
    return 100.0 * lost / sent;
}

std::vector<double> apdl_series(std::span<const SlotRecord> records, double slot_duration_s,
                                int expiry_slots, ApdlMode mode) {
    std::vector<double> out;
    out.reserve(records.size());
    double lost = 0.0, sent = 0.0;
    for (const auto& r : records) {
        lost += r.size_bits - delivered_for_apdl(r, slot_duration_s, expiry_slots, mode);
        sent += r.size_bits;
        out.push_back(100.0 * lost / sent);
    }
    return out;
}

TripResult summarize(std::vector<SlotRecord> records, double slot_duration_s, int expiry_slots,
                     ApdlMode mode) {
    TripResult result;
    result.slot_duration_s = slot_duration_s;
    result.expiry_slots = expiry_slots;
    result.apdl_series = apdl_series(records, slot_duration_s, expiry_slots, mode);
    for (std::size_t k = 0; k < records.size(); ++k) {
        records[k].apdl_pct = result.apdl_series[k];
        result.total_bits += records[k].size_bits;
    }
    result.cdl_bits = cumulative_data_loss(records);
    result.trip_delay_s = trip_delay(records, slot_duration_s, expiry_slots);
    result.records = std::move(records);
    return result;
}

}  // namespace uamlink
