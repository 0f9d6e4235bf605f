#pragma once

#include <stdexcept>
#include <string>

namespace ptbnn {

// Stage-labelled runtime error. `stage` names the pipeline step that failed
// (config, data, model, sampler, orchestrator, io).
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ptbnn
