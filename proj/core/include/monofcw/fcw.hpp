#pragma once

#include <utility>

namespace monofcw {

enum class WarningLevel { none, caution, alert };

const char* warning_level_name(WarningLevel level) noexcept;

struct FcwConfig {
  double d_alert = 7.0;       // hard distance floor [m]
  double d_caution = 15.0;    // [m]
  double headway_alert = 1.5;  // time headway threshold [s]
  double smoothing = 0.4;      // exponential smoothing factor for closing speed
};

struct TrackState {
  bool has_last = false;
  double last_d = 0.0;         // [m]
  double closing_speed = 0.0;  // smoothed [m/s], positive = approaching
};

// Level as a function of distance and (smoothed) closing speed alone.
// Monotone: closer or faster-approaching never lowers the level.
WarningLevel classify(const FcwConfig& config, double d, double closing_speed);

// One observation step: updates the smoothed closing speed from the raw
// rate (last_d - d) / dt and classifies. The first observation contributes
// no speed. Missing detections are a caller policy (reset after coasting).
std::pair<TrackState, WarningLevel> update(const TrackState& state, double d,
                                           double dt, const FcwConfig& config);

}  // namespace monofcw
