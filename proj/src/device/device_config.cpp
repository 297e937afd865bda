#include "mesram/device/device_config.hpp"

#include "mesram/common/error.hpp"

namespace mesram::device {

namespace {

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> to_array(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

}  // namespace

DeviceConfig load_device_config(const ConfigSection& section) {
  SectionReader r(section);
  DeviceConfig c;
  auto& m = c.mefet;
  m.eps_me = r.real("eps_me", m.eps_me);
  m.eps_al2o3 = r.real("eps_al2o3", m.eps_al2o3);
  m.t_me = r.real("t_me", m.t_me);
  m.area_me = r.real("area_me", m.area_me);
  m.t_ox = r.real("t_ox", m.t_ox);
  m.v_th = r.real("v_th", m.v_th);
  m.v_g_nominal = r.real("v_g_nominal", m.v_g_nominal);
  m.r_on = r.real("r_on", m.r_on);
  m.r_off = r.real("r_off", m.r_off);
  m.precession_delay = r.real("precession_delay", m.precession_delay);
  m.r_in = r.real("r_in", m.r_in);

  auto& l = c.llg;
  l.gamma = r.real("gamma", l.gamma);
  l.alpha = r.real("alpha", l.alpha);
  l.beta_me = r.real("beta_me", l.beta_me);
  l.sigma_scale = r.real("sigma_scale", l.sigma_scale);
  l.m_s = r.real("m_s", l.m_s);
  l.volume = r.real("volume", l.volume);
  l.temperature = r.real("temperature", l.temperature);
  l.dt = r.real("dt", l.dt);
  l.h_ext = to_vec(r.vec3("h_ext", to_array(l.h_ext)));
  l.k_u = r.real("k_u", l.k_u);
  l.easy_axis = to_vec(r.vec3("easy_axis", to_array(l.easy_axis)));
  l.max_time = r.real("max_time", l.max_time);
  r.finish();

  try {
    m.validate();
    l.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("[device] ") + e.what());
  }
  return c;
}

}  // namespace mesram::device
