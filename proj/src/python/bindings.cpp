#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "satotate/cli.hpp"
#include "satotate/errors.hpp"
#include "satotate/frobenius.hpp"
#include "satotate/measures.hpp"
#include "satotate/parity.hpp"
#include "satotate/report_json.hpp"

namespace py = pybind11;
using namespace satotate;

namespace {

std::vector<ApRecord> to_records(const std::vector<std::pair<std::int64_t, std::int64_t>>& rows) {
  std::vector<ApRecord> out;
  out.reserve(rows.size());
  for (const auto& [p, ap] : rows) out.push_back({p, ap});
  return out;
}

std::string model_json(const std::string& name, int char_cap) {
  const ModelPtr m = builtin_model(name, char_cap);
  nlohmann::json j = model_metadata(*m);
  j["parity"] = to_json(parity_group_order(*m));
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sato-Tate group models, equidistribution tests and Frobenius data";

  py::register_exception<Error>(m, "SatoTateError", PyExc_RuntimeError);

  m.attr("DEFAULT_CHAR_CAP") = kDefaultCharCap;
  m.attr("DEFAULT_Z") = kDefaultZ;

  m.def("model_names", &builtin_model_names);
  m.def("_model_json", &model_json, py::arg("name"), py::arg("char_cap") = kDefaultCharCap);

  m.def(
      "character_value",
      [](const std::string& model, const std::string& label, int component, std::vector<double> angles) {
        const ModelPtr g = builtin_model(model, kDefaultCharCap);
        const ClassPoint x = g->canonical(component, std::span<const double>(angles));
        return character_value(*g, g->character(label), x);
      },
      py::arg("model"), py::arg("label"), py::arg("component"), py::arg("angles"));

  m.def(
      "haar_integral",
      [](const std::string& model, const std::string& label, int nodes) {
        const ModelPtr g = builtin_model(model, kDefaultCharCap);
        return integrate_class_function(*g, as_class_function(g->character(label)), nodes);
      },
      py::arg("model"), py::arg("label"), py::arg("nodes") = kDefaultNodes1D);

  m.def(
      "sample_haar",
      [](const std::string& model, std::size_t n, std::uint64_t seed) {
        const ClassSequence s = sample_haar(builtin_model(model, kDefaultCharCap), n, seed);
        std::vector<std::pair<int, std::vector<double>>> out;
        out.reserve(s.points.size());
        for (const auto& x : s.points) out.emplace_back(x.component, std::vector<double>(x.angles().begin(), x.angles().end()));
        return out;
      },
      py::arg("model"), py::arg("n"), py::arg("seed") = 0);

  m.def(
      "_induction_check_json",
      [](const std::string& sub, const std::string& amb, const std::string& label) {
        const SubgroupInclusion incl = builtin_inclusion(sub, amb);
        return to_json(check_induction_identities(incl, incl.sub->character(label))).dump();
      },
      py::arg("sub"), py::arg("amb"), py::arg("label"));

  m.def(
      "_artin_decompose_json",
      [](const std::string& model, const std::string& label) {
        const ModelPtr g = builtin_model(model, kDefaultCharCap);
        const auto tower = cyclic_intermediates(g);
        return to_json(artin_decompose(*g, g->character(label), tower)).dump();
      },
      py::arg("model"), py::arg("label"));

  m.def(
      "count_points", [](std::int64_t a, std::int64_t b, std::int64_t p) { return count_points(CurveSpec{a, b, ""}, p); },
      py::arg("a"), py::arg("b"), py::arg("p"));

  m.def(
      "generate_ap",
      [](std::int64_t a, std::int64_t b, std::int64_t bound, unsigned threads) {
        GenerationResult g;
        {
          py::gil_scoped_release release;
          g = generate_ap(make_curve(a, b), bound, threads);
        }
        std::vector<std::pair<std::int64_t, std::int64_t>> rows;
        rows.reserve(g.rows.size());
        for (const auto& r : g.rows) rows.emplace_back(r.p, r.ap);
        return py::make_tuple(rows, g.skipped);
      },
      py::arg("a"), py::arg("b"), py::arg("bound"), py::arg("threads") = 1);

  m.def(
      "cm_detect",
      [](const std::vector<std::pair<std::int64_t, std::int64_t>>& rows, double threshold) {
        const auto rec = to_records(rows);
        return cm_detect(std::span<const ApRecord>(rec), threshold);
      },
      py::arg("rows"), py::arg("threshold") = kDefaultCmThreshold);

  m.def(
      "_run_test_json",
      [](std::optional<std::pair<std::int64_t, std::int64_t>> curve, std::int64_t bound, const std::string& model,
         int char_cap, double z, std::uint64_t seed, std::optional<std::size_t> synthetic,
         std::optional<std::string> input_path, bool negate_ap) {
        cli::RunConfig cfg;
        if (curve) cfg.curve = make_curve(curve->first, curve->second);
        cfg.prime_bound = bound;
        cfg.model = model;
        cfg.char_cap = char_cap;
        cfg.z = z;
        cfg.seed = seed;
        cfg.synthetic = synthetic;
        cfg.input_path = std::move(input_path);
        cfg.negate_ap = negate_ap;
        int code = cli::kExitFail;
        std::string text;
        {
          py::gil_scoped_release release;
          text = cli::test_report(cfg, code).dump();
        }
        return py::make_tuple(text, code);
      },
      py::arg("curve") = py::none(), py::arg("bound") = 100000, py::arg("model") = "auto",
      py::arg("char_cap") = kDefaultCharCap, py::arg("z") = kDefaultZ, py::arg("seed") = 0,
      py::arg("synthetic") = py::none(), py::arg("input_path") = py::none(), py::arg("negate_ap") = false);
}
