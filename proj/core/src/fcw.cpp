#include "monofcw/fcw.hpp"

#include <cmath>

#include "monofcw/error.hpp"

namespace monofcw {

const char* warning_level_name(WarningLevel level) noexcept {
  switch (level) {
    case WarningLevel::none: return "NONE";
    case WarningLevel::caution: return "CAUTION";
    case WarningLevel::alert: return "ALERT";
  }
  return "?";
}

WarningLevel classify(const FcwConfig& config, double d, double closing_speed) {
  if (d < config.d_alert ||
      (closing_speed > 0.0 && d / closing_speed < config.headway_alert)) {
    return WarningLevel::alert;
  }
  if (d < config.d_caution) return WarningLevel::caution;
  return WarningLevel::none;
}

std::pair<TrackState, WarningLevel> update(const TrackState& state, double d,
                                           double dt, const FcwConfig& config) {
  if (!(d > 0.0) || !std::isfinite(d) || !(dt > 0.0) || !std::isfinite(dt)) {
    raise(errc::invalid_argument, "update needs d > 0 and dt > 0");
  }
  if (!(config.d_alert > 0.0) || !(config.d_caution > config.d_alert) ||
      !(config.headway_alert > 0.0) || !(config.smoothing > 0.0) ||
      config.smoothing > 1.0) {
    raise(errc::invalid_argument, "fcw config out of range");
  }

  TrackState next = state;
  if (state.has_last) {
    const double raw = (state.last_d - d) / dt;
    next.closing_speed =
        config.smoothing * raw + (1.0 - config.smoothing) * state.closing_speed;
  } else {
    next.closing_speed = 0.0;
  }
  next.last_d = d;
  next.has_last = true;
  return {next, classify(config, d, next.closing_speed)};
}

}  // namespace monofcw
