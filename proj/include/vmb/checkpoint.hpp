#pragma once
// Binary checkpoint: magic "VMBCKPT1", a little-endian u64 header length, a JSON header
// (grid, time, metadata), then raw doubles (re, im) of f, g, E, B in storage order.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vmb/state.hpp"

namespace vmb {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_checkpoint(const std::string& path, const KineticState& s, const nlohmann::ordered_json& meta = {});

struct Checkpoint {
  KineticState state;
  nlohmann::json meta;
};
Checkpoint read_checkpoint(const std::string& path);

}  // namespace vmb
