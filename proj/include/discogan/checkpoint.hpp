#pragma once

#include <iosfwd>
#include <string>

#include "discogan/config.hpp"
#include "discogan/trainer.hpp"

namespace discogan {

inline constexpr const char* kCheckpointMagic = "discogan-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// A trainer state plus the evaluation settings of the run that produced it.
// experiment.train always equals state.config.
struct Checkpoint {
  ExperimentConfig experiment;
  TrainerState state;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Line-oriented text: header, embedded config, iteration, Rng words, then
// every network (spec and parameters) and optimizer state, and an "end"
// trailer. Doubles are written with 17 significant digits.
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
// Throws PersistenceError on a bad header, unsupported version, malformed
// or truncated content.
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace discogan
