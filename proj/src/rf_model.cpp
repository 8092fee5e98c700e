#include "donsa/rf_model.hpp"

#include <cmath>

#include "donsa/errors.hpp"

namespace donsa {

void validate(const RfInterface& rf) {
  if (rf.id.empty()) throw InvalidArgument("rf interface needs a non-empty id");
  if (!(rf.channel_bw_hz > 0.0))
    throw InvalidArgument("rf '" + rf.id + "': channel_bw_hz must be > 0");
  if (!(rf.max_rate_bps > 0.0))
    throw InvalidArgument("rf '" + rf.id + "': max_rate_bps must be > 0 or unbounded");
  if (rf.num_channels < 1)
    throw InvalidArgument("rf '" + rf.id + "': num_channels must be >= 1");
  if (rf.rf_class == RfClass::M2M && rf.num_channels != 1)
    throw InvalidArgument("rf '" + rf.id + "': M2M interfaces have exactly one channel");
  if (rf.rf_class == RfClass::M2B) {
    if (rf.bs_total_bw_hz < rf.channel_bw_hz)
      throw InvalidArgument("rf '" + rf.id + "': bs_total_bw_hz must be >= channel_bw_hz");
    if (rf.bs_conn_cap < 0)
      throw InvalidArgument("rf '" + rf.id + "': bs_conn_cap must be >= 0");
  }
}

void validate(const ChannelModel& cm) {
  if (!(cm.path_loss_exponent > 0.0))
    throw InvalidArgument("path_loss_exponent must be > 0");
  const double params[] = {cm.path_loss_exponent, cm.shadowing_std_db, cm.rayleigh_scale,
                           cm.noise_psd_dbm_hz,   cm.noise_figure_db,  cm.reference_distance_m,
                           cm.reference_loss_db};
  for (double p : params)
    if (!std::isfinite(p)) throw InvalidArgument("channel model parameters must be finite");
  if (!(cm.reference_distance_m > 0.0))
    throw InvalidArgument("reference_distance_m must be > 0");
  if (cm.shadowing_std_db < 0.0) throw InvalidArgument("shadowing_std_db must be >= 0");
  if (cm.rayleigh_scale < 0.0) throw InvalidArgument("rayleigh_scale must be >= 0");
}

FadingDraw sample_fading(Rng& rng, const ChannelModel& cm) {
  FadingDraw draw;
  draw.shadow_db = cm.shadowing_std_db * rng.normal();
  // |h|^2 for |h| ~ Rayleigh(sigma) is exponential with mean 2*sigma^2.
  // uniform01() is strictly inside (0,1), so the gain is always positive.
  const double u = rng.uniform01();
  draw.rayleigh_gain = -2.0 * cm.rayleigh_scale * cm.rayleigh_scale * std::log(u);
  return draw;
}

double link_sinr(double distance_m, const RfInterface& rf, const ChannelModel& cm,
                 const FadingDraw& fading, double bw_hz) {
  if (distance_m == 0.0)
    throw DegenerateGeometry("link distance is zero; perturb co-located nodes");
  if (!(distance_m > 0.0)) throw InvalidArgument("distance_m must be positive");
  if (!(bw_hz > 0.0)) throw InvalidArgument("bw_hz must be positive");
  if (fading.rayleigh_gain < 0.0) throw InvalidArgument("rayleigh_gain must be >= 0");
  if (fading.rayleigh_gain == 0.0) return 0.0;

  const double path_loss_db =
      10.0 * cm.path_loss_exponent * std::log10(distance_m / cm.reference_distance_m);
  const double rx_dbm = rf.tx_power_dbm - cm.reference_loss_db - path_loss_db +
                        fading.shadow_db + 10.0 * std::log10(fading.rayleigh_gain);
  const double noise_dbm = cm.noise_psd_dbm_hz + 10.0 * std::log10(bw_hz) + cm.noise_figure_db;
  return std::pow(10.0, (rx_dbm - noise_dbm) / 10.0);
}

double shannon_rate(double bw_hz, double sinr_linear) {
  if (bw_hz < 0.0 || sinr_linear < 0.0)
    throw InvalidArgument("shannon_rate arguments must be non-negative");
  return bw_hz * std::log2(1.0 + sinr_linear);
}

double capped_link_rate(double sh_rate_bps, const RfInterface& rf) {
  return std::min(sh_rate_bps, rf.max_rate_bps);
}

double df_two_hop_rate(double first_hop_bps, double second_hop_bps) {
  return std::min(first_hop_bps, second_hop_bps);
}

bool rf_eligible(const RfInterface& rf, double requested_bw_hz) {
  return rf.channel_bw_hz >= requested_bw_hz;
}

}  // namespace donsa
