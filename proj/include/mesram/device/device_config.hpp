#pragma once

#include "mesram/common/config.hpp"
#include "mesram/device/mefet.hpp"

namespace mesram::device {

struct DeviceConfig {
  MefetParams mefet;
  LlgParams llg;
};

/// Reads the `[device]` section. Keys are the MefetParams / LlgParams field
/// names in SI units; vectors are written `x, y, z`. Unknown keys are rejected.
DeviceConfig load_device_config(const ConfigSection& section);

}  // namespace mesram::device
