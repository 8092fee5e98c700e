#pragma once

#include <limits>
#include <string>
#include <vector>

#include "donsa/rng.hpp"

namespace donsa {

enum class RfClass { M2M, M2B };

// One radio technology. M2M interfaces carry machine-to-machine hops,
// M2B interfaces carry machine-to-base-station hops. The bs_* fields
// describe the base-station side of an M2B interface and are meaningless
// for M2M entries.
struct RfInterface {
  std::string id;
  RfClass rf_class = RfClass::M2M;
  double channel_bw_hz = 0.0;
  double max_rate_bps = std::numeric_limits<double>::infinity();  // infinity = uncapped
  int num_channels = 1;        // M2M interfaces always have exactly one channel
  double bs_total_bw_hz = 0.0; // M2B only
  int bs_conn_cap = 0;         // M2B only
  double carrier_freq_hz = 0.0;
  double tx_power_dbm = 23.0;
};

// Log-distance path loss with log-normal shadowing and Rayleigh small-scale
// fading. Interference is not modeled: interfaces do not overlap, so
// SINR == SNR throughout.
struct ChannelModel {
  double path_loss_exponent = 4.0;
  double shadowing_std_db = 8.0;   // N(0, 64) dB
  double rayleigh_scale = 1.0;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double reference_distance_m = 1.0;
  double reference_loss_db = 40.0;
};

struct FadingDraw {
  double shadow_db = 0.0;
  double rayleigh_gain = 1.0;  // |h|^2, linear power gain
};

void validate(const RfInterface& rf);
void validate(const ChannelModel& cm);

// Draws one (shadowing, Rayleigh gain) pair from the stream. Consumes a
// fixed number of uniforms per call, so streams stay aligned.
FadingDraw sample_fading(Rng& rng, const ChannelModel& cm);

// Linear SINR of a link at the given distance and receive bandwidth.
// Throws DegenerateGeometry for zero distance.
double link_sinr(double distance_m, const RfInterface& rf, const ChannelModel& cm,
                 const FadingDraw& fading, double bw_hz);

// Shannon-Hartley channel rate, bits/s.
double shannon_rate(double bw_hz, double sinr_linear);

// Applies the per-interface rate cap.
double capped_link_rate(double sh_rate_bps, const RfInterface& rf);

// Decode-and-forward end-to-end rate: the slower hop bounds the route.
double df_two_hop_rate(double first_hop_bps, double second_hop_bps);

// An interface can serve a request only if one channel fits the whole
// requested bandwidth.
bool rf_eligible(const RfInterface& rf, double requested_bw_hz);

}  // namespace donsa
