// Thin Python face over the sampler: low-level pieces for poking at the
// model, plus profile-driven experiment runs returning the report as JSON.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "ptbnn/data.hpp"
#include "ptbnn/errors.hpp"
#include "ptbnn/experiment.hpp"
#include "ptbnn/network.hpp"
#include "ptbnn/tempering.hpp"

namespace py = pybind11;
using namespace ptbnn;

namespace {

Task parse_task(const std::string& name) {
  if (name == "regression") return Task::Regression;
  if (name == "classification") return Task::Classification;
  throw Error("config", "unknown task '" + name + "'");
}

NetworkShape make_shape(std::size_t inputs, std::size_t hidden,
                        const std::string& task, std::size_t classes) {
  return {inputs, hidden, parse_task(task), classes};
}

void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value) {
  // reuse the profile parser so CLI and Python overrides behave identically
  if (key == "method") config.method = value;
  else if (key == "samples") config.total_samples = std::stoull(value);
  else if (key == "replicas") config.replicas = std::stoull(value);
  else if (key == "swap_interval") config.swap_interval = std::stoull(value);
  else if (key == "max_temp") config.max_temp = std::stod(value);
  else if (key == "lg_freq") config.lg_freq = std::stod(value);
  else if (key == "learn_rate") config.learn_rate = std::stod(value);
  else if (key == "seed") config.seed = std::stoull(value);
  else if (key == "out") config.out_dir = value;
  else if (key == "parallel") config.parallel = (value == "true" || value == "1");
  else throw Error("config", "unknown override '" + key + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parallel-tempering MCMC for Bayesian neural networks";

  py::register_exception<Error>(m, "PtbnnError");

  m.def(
      "param_count",
      [](std::size_t inputs, std::size_t hidden, const std::string& task,
         std::size_t classes) {
        return param_count(make_shape(inputs, hidden, task, classes));
      },
      py::arg("inputs"), py::arg("hidden"), py::arg("task"),
      py::arg("classes") = 1);

  m.def(
      "forward",
      [](std::size_t inputs, std::size_t hidden, const std::string& task,
         std::size_t classes, const std::vector<double>& theta,
         const std::vector<double>& x) {
        return forward(make_shape(inputs, hidden, task, classes), theta,
                       {x.data(), x.size()});
      },
      py::arg("inputs"), py::arg("hidden"), py::arg("task"),
      py::arg("classes"), py::arg("theta"), py::arg("x"));

  m.def(
      "softmax",
      [](const std::vector<double>& scores) {
        return softmax({scores.data(), scores.size()});
      },
      py::arg("scores"));

  m.def(
      "build_ladder",
      [](std::size_t replicas, double max_temp) {
        return build_ladder(replicas, max_temp).temps;
      },
      py::arg("replicas"), py::arg("max_temp"));

  m.def(
      "takens_embed",
      [](const std::vector<double>& series, std::size_t D, std::size_t T) {
        const EmbeddedDataset e = takens_embed({series.data(), series.size()}, D, T);
        std::vector<std::vector<double>> rows(e.X.rows);
        for (std::size_t r = 0; r < e.X.rows; ++r)
          rows[r].assign(e.X.row(r).begin(), e.X.row(r).end());
        return py::make_tuple(rows, e.y);
      },
      py::arg("series"), py::arg("embed_dim"), py::arg("lag"));

  m.def(
      "run_profile",
      [](const std::string& path,
         const std::map<std::string, std::string>& overrides) {
        RunConfig config = load_profile(path);
        for (const auto& [key, value] : overrides)
          apply_override(config, key, value);
        py::gil_scoped_release release;
        const RunReport report = run_experiment(config);
        return report_to_json(report, true);
      },
      py::arg("path"), py::arg("overrides") = std::map<std::string, std::string>{},
      "Run an experiment profile; returns the report as a JSON string.");
}
