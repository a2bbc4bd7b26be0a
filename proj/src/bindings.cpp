#include "povmcoh/coherence.hpp"
#include "povmcoh/pic.hpp"
#include "povmcoh/random.hpp"
#include "povmcoh/trine.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace povmcoh;

namespace {

DensityMatrix as_density(const CMatrix &m) { return DensityMatrix(m); }

Eigen::MatrixXd landscape_table(const std::vector<LandscapeSample> &samples) {
  Eigen::MatrixXd table(samples.size(), 6);
  for (size_t i = 0; i < samples.size(); ++i) {
    const auto &s = samples[i];
    table.row(i) << s.theta, s.phi, s.bloch(0), s.bloch(1), s.bloch(2), s.value;
  }
  return table;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "POVM-based coherence: Naimark extensions, coherence measures, "
            "free-operation SDPs";

  py::register_exception<ValidationError>(m, "ValidationError");

  py::class_<Povm>(m, "Povm")
      .def(py::init<int, std::vector<CMatrix>>(), py::arg("dim"),
           py::arg("effects"))
      .def_property_readonly("dim", &Povm::dim)
      .def_property_readonly("outcomes", &Povm::outcomes)
      .def_property_readonly("effects", &Povm::effects);

  py::class_<PovmDiagnostics>(m, "PovmDiagnostics")
      .def_readonly("ok", &PovmDiagnostics::ok)
      .def_readonly("completeness_residual",
                    &PovmDiagnostics::completeness_residual)
      .def_readonly("min_eigenvalues", &PovmDiagnostics::min_eigenvalues)
      .def_readonly("message", &PovmDiagnostics::message);

  py::enum_<ExtensionKind>(m, "ExtensionKind")
      .value("canonical", ExtensionKind::canonical)
      .value("minimal", ExtensionKind::minimal);

  py::class_<NaimarkExtension>(m, "NaimarkExtension")
      .def_readonly("d", &NaimarkExtension::d)
      .def_readonly("d_prime", &NaimarkExtension::d_prime)
      .def_readonly("kind", &NaimarkExtension::kind)
      .def_readonly("projectors", &NaimarkExtension::projectors)
      .def_readonly("embedding", &NaimarkExtension::embedding);

  py::class_<ExtensionDiagnostics>(m, "ExtensionDiagnostics")
      .def_readonly("ok", &ExtensionDiagnostics::ok)
      .def_readonly("max_residual", &ExtensionDiagnostics::max_residual)
      .def_readonly("message", &ExtensionDiagnostics::message);

  py::class_<CoherenceReport>(m, "CoherenceReport")
      .def_readonly("value", &CoherenceReport::value)
      .def_readonly("probs", &CoherenceReport::probs)
      .def_readonly("branch_entropies", &CoherenceReport::branch_entropies)
      .def_readonly("state_entropy", &CoherenceReport::state_entropy)
      .def("__repr__", [](const CoherenceReport &r) {
        return "<CoherenceReport value=" + std::to_string(r.value) + ">";
      });

  py::class_<PicVerdict>(m, "PicVerdict")
      .def_readonly("feasible", &PicVerdict::feasible)
      .def_readonly("marginal", &PicVerdict::marginal)
      .def_readonly("slack", &PicVerdict::slack)
      .def_property_readonly("choi",
                             [](const PicVerdict &v) -> py::object {
                               if (!v.choi)
                                 return py::none();
                               return py::cast(v.choi->m);
                             })
      .def("__repr__", [](const PicVerdict &v) {
        return std::string("<PicVerdict feasible=") +
               (v.feasible ? "True" : "False") +
               " slack=" + std::to_string(v.slack) + ">";
      });

  py::class_<PicContext>(m, "PicContext")
      .def(py::init<const NaimarkExtension &>(), py::arg("extension"))
      .def_property_readonly("null_dim", &PicContext::null_dim);

  py::class_<MinCoherenceResult>(m, "MinCoherenceResult")
      .def_property_readonly(
          "bloch", [](const MinCoherenceResult &r) { return r.r.r; })
      .def_readonly("value", &MinCoherenceResult::value)
      .def_readonly("converged", &MinCoherenceResult::converged)
      .def_readonly("iterations", &MinCoherenceResult::iterations);

  py::class_<MaxCoherenceResult>(m, "MaxCoherenceResult")
      .def_property_readonly(
          "amplitudes",
          [](const MaxCoherenceResult &r) { return r.state.amplitudes(); })
      .def_readonly("value", &MaxCoherenceResult::value);

  m.def("trine_povm", &trine_povm);
  m.def("trine_directions", &trine_directions);
  m.def("validate", &validate, py::arg("povm"), py::arg("tol") = kHermTol);
  m.def(
      "canonical_kraus",
      [](const Povm &p) { return canonical_kraus(p).ops; }, py::arg("povm"));
  m.def(
      "outcome_probs",
      [](const Povm &p, const CMatrix &rho) {
        return outcome_probs(p, as_density(rho));
      },
      py::arg("povm"), py::arg("rho"));

  m.def(
      "minimal_extension",
      [](const Povm &p, std::uint64_t seed) { return minimal_extension(p, seed); },
      py::arg("povm"), py::arg("seed") = 0);
  m.def(
      "canonical_extension",
      [](const std::vector<CMatrix> &kraus, std::uint64_t seed) {
        return canonical_extension(MeasurementOperators{kraus}, seed);
      },
      py::arg("kraus"), py::arg("seed") = 0);
  m.def("validate_extension", &validate_extension, py::arg("extension"),
        py::arg("povm"), py::arg("tol") = kHermTol);
  m.def(
      "embed_state",
      [](const CMatrix &rho, const NaimarkExtension &x) {
        return embed_state(as_density(rho), x).matrix();
      },
      py::arg("rho"), py::arg("extension"));

  m.def(
      "block_dephase",
      [](const CMatrix &rho_prime, const NaimarkExtension &x) {
        return block_dephase(rho_prime, x.projectors);
      },
      py::arg("rho_prime"), py::arg("extension"));
  m.def(
      "c_rel_block",
      [](const CMatrix &rho_prime, const NaimarkExtension &x) {
        return c_rel_block(as_density(rho_prime), x);
      },
      py::arg("rho_prime"), py::arg("extension"));
  m.def(
      "c_rel_povm",
      [](const CMatrix &rho, const Povm &p) {
        return c_rel_povm(as_density(rho), p);
      },
      py::arg("rho"), py::arg("povm"));
  m.def(
      "is_povm_incoherent",
      [](const CMatrix &rho, const Povm &p, double tol) {
        const IncoherenceCheck check = is_povm_incoherent(as_density(rho), p, tol);
        return py::make_tuple(check.incoherent, check.max_residual);
      },
      py::arg("rho"), py::arg("povm"), py::arg("tol") = 1e-8);
  m.def("min_coherence_qubit", &min_coherence_qubit, py::arg("povm"),
        py::arg("max_iterations") = 5000, py::arg("grad_tol") = 1e-7);
  m.def("max_coherence_pure", &max_coherence_pure, py::arg("povm"),
        py::arg("grid_density") = 2000, py::arg("seed") = 0);

  m.def(
      "pic_feasibility",
      [](const std::vector<CMatrix> &kraus, const PicContext &ctx,
         double feas_threshold) {
        PicOptions opt;
        opt.feas_threshold = feas_threshold;
        return pic_feasibility(process_from_kraus(kraus), ctx, opt);
      },
      py::arg("kraus"), py::arg("context"), py::arg("feas_threshold") = 1e-7);
  m.def(
      "fmax",
      [](const CMatrix &rho, const CMatrix &sigma, const PicContext &ctx) {
        return fmax(as_density(rho), as_density(sigma), ctx).value;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("context"));
  m.def(
      "fidelity_sdp",
      [](const CMatrix &rho, const CMatrix &sigma) {
        return fidelity_sdp(as_density(rho), as_density(sigma));
      },
      py::arg("rho"), py::arg("sigma"));

  m.def(
      "fidelity",
      [](const CMatrix &rho, const CMatrix &sigma) {
        return fidelity(as_density(rho), as_density(sigma));
      },
      py::arg("rho"), py::arg("sigma"));
  m.def(
      "von_neumann_entropy",
      [](const CMatrix &rho) { return von_neumann_entropy(as_density(rho)); },
      py::arg("rho"));
  m.def("shannon_entropy", &shannon_entropy, py::arg("p"),
        py::arg("tol") = 1e-7);
  m.def(
      "bloch_to_density",
      [](const Eigen::Vector3d &r) {
        return bloch_to_density(BlochVector{r}).matrix();
      },
      py::arg("r"));
  m.def(
      "density_to_bloch",
      [](const CMatrix &rho) { return density_to_bloch(as_density(rho)).r; },
      py::arg("rho"));
  m.def("rotation_unitary", &rotation_unitary, py::arg("axis"),
        py::arg("theta"));

  m.def("trine_incoherent_unitaries", &trine_incoherent_unitaries);
  m.def("derive_incoherent_unitaries", &derive_incoherent_unitaries,
        py::arg("extension"));
  m.def(
      "coherence_landscape",
      [](const Povm &p, int n_theta, int n_phi, int threads) {
        GridSpec grid;
        grid.n_theta = n_theta;
        grid.n_phi = n_phi;
        return landscape_table(coherence_landscape(p, grid, threads));
      },
      py::arg("povm"), py::arg("n_theta") = 91, py::arg("n_phi") = 181,
      py::arg("threads") = 0,
      "Columns: theta, phi, bx, by, bz, value; rows ordered by grid index.");
  m.def(
      "conversion_landscape",
      [](const CMatrix &rho, const PicContext &ctx, int n_theta, int n_phi,
         int threads) {
        GridSpec grid;
        grid.n_theta = n_theta;
        grid.n_phi = n_phi;
        return landscape_table(
            conversion_landscape(as_density(rho), ctx, grid, threads));
      },
      py::arg("rho"), py::arg("context"), py::arg("n_theta") = 91,
      py::arg("n_phi") = 181, py::arg("threads") = 0);
}
