#pragma once

// Macrospin magnetization dynamics of the ME-coupled channel.
//
// The Gilbert-form equation
//     dm/dt = -|gamma| m x H_eff + alpha (m x dm/dt) + sigma beta_ME (m x E)
// is integrated in its explicit Landau-Lifshitz form
//     dm/dt = -1/(1+alpha^2) [ m x W + alpha m x (m x W) ],
//     W     = gamma B_eff - sigma beta_ME E          (rad/s)
// where B_eff = mu0 (H_anis + H_ext) + B_thermal is in tesla.

#include <cstdint>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mesram::device {

using Vec3 = Eigen::Vector3d;

inline constexpr double kBoltzmann = 1.380649e-23;          // J/K
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // T m/A
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

struct LlgParams {
  double gamma = 1.76e11;  // rad s^-1 T^-1
  double alpha = 0.01;
  // ME drive coefficient in rad s^-1 per V/m. Calibrated; see calibration.hpp.
  double beta_me = 6.31e6;
  double sigma_scale = 1.0;
  double m_s = 1.0e5;        // A/m
  double volume = 9.0e-25;   // m^3 (900 nm^2 x 1 nm coupled boundary layer)
  double temperature = 300.0;  // K
  double dt = 5.0e-16;       // s
  // Small transverse bias: tilts the rest state off the easy axis so a purely
  // axial ME drive can start the reversal at T = 0.
  Vec3 h_ext{1.6e5, 0.0, 0.0};  // A/m
  double k_u = 3.2e6;            // A/m, anisotropy field magnitude
  Vec3 easy_axis{0.0, 0.0, 1.0};
  double max_time = 10.0e-9;  // s, write abandons after this long

  void validate() const;
};

struct MagnetizationState {
  Vec3 m{0.0, 0.0, 1.0};
  double t = 0.0;
};

/// Angular-rate field W(m) for a given ME field and thermal field (tesla).
Vec3 precession_rate(const Vec3& m, const LlgParams& lp, const Vec3& e_field,
                     const Vec3& thermal_b);

/// dm/dt at m.
Vec3 llg_rhs(const Vec3& m, const LlgParams& lp, const Vec3& e_field, const Vec3& thermal_b);

/// One stochastic Heun step (thermal field held fixed over the step), followed
/// by renormalization. Throws InvalidInput for dt <= 0.
MagnetizationState llg_step(const MagnetizationState& state, const LlgParams& lp,
                            const Vec3& e_field, const Vec3& thermal_b = Vec3::Zero());

/// Deterministic classical RK4 step, used as a reference integrator.
MagnetizationState rk4_step(const MagnetizationState& state, const LlgParams& lp,
                            const Vec3& e_field, double dt);

/// Per-component standard deviation of the thermal field in tesla:
/// sqrt(2 alpha kB T / (gamma Ms V dt)).
double thermal_field_std(const LlgParams& lp);

/// Thermal field sample for (seed, call_index). Zero vector at T = 0.
Vec3 thermal_field(const LlgParams& lp, std::uint64_t seed, std::uint64_t call_index);
/// Same draw with the standard deviation supplied by the caller.
Vec3 thermal_sample(double std_t, std::uint64_t seed, std::uint64_t call_index);

/// Easy-axis projection m . e.
double easy_projection(const Vec3& m, const LlgParams& lp);

}  // namespace mesram::device
