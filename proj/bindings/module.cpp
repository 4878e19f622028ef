#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "dppt/countlaw.hpp"
#include "dppt/errors.hpp"
#include "dppt/kernel.hpp"
#include "dppt/presets.hpp"
#include "dppt/rng.hpp"
#include "dppt/sampling.hpp"
#include "dppt/tail_experiments.hpp"
#include "dppt/transference.hpp"
#include "dppt/version.hpp"

namespace py = pybind11;
using namespace dppt;

namespace {

using NpMatrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const NpMatrix& a) {
  if (a.ndim() != 2)
    throw validation_error("expected a 2-d array");
  Matrix m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

py::array_t<double> to_numpy(const Matrix& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), a.mutable_data());
  return a;
}

Partition make_partition(const GroundSpace& space, int m) {
  return space.is_discrete() ? Partition::discrete_blocks(space, m)
                             : Partition::uniform_interval(space, m);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "transference of determinantal point processes onto partitions";
  mod.attr("__version__") = kVersion;

  py::register_exception<validation_error>(mod, "ValidationError",
                                           PyExc_ValueError);
  py::register_exception<tolerance_error>(mod, "ToleranceError",
                                          PyExc_RuntimeError);

  py::class_<SpectralKernel>(mod, "SpectralKernel")
      .def_property_readonly("rank", &SpectralKernel::rank)
      .def_property_readonly("trace", &SpectralKernel::trace)
      .def_property_readonly(
          "eigenvalues",
          [](const SpectralKernel& k) { return k.eigenvalues; })
      .def_property_readonly(
          "is_discrete",
          [](const SpectralKernel& k) { return k.space.is_discrete(); })
      .def("is_projection", &SpectralKernel::is_projection,
           py::arg("tol") = 0.0)
      .def("__call__",
           [](const SpectralKernel& k, double x, double y) {
             return eval_kernel(k, x, y);
           })
      .def("matrix",
           [](const SpectralKernel& k) { return to_numpy(kernel_matrix(k)); })
      .def("__repr__", [](const SpectralKernel& k) {
        return "<SpectralKernel rank=" + std::to_string(k.rank()) + ">";
      });

  py::class_<TransferredKernel>(mod, "TransferredKernel")
      .def_property_readonly(
          "q", [](const TransferredKernel& t) { return to_numpy(t.q); })
      .def_property_readonly("dim", &TransferredKernel::dim)
      .def_property_readonly(
          "blocks",
          [](const TransferredKernel& t) {
            std::vector<std::pair<int, int>> out;
            for (const auto& b : t.blocks) out.emplace_back(b.start, b.len);
            return out;
          })
      .def_property_readonly(
          "leakage", [](const TransferredKernel& t) { return t.leakage; })
      .def("__repr__", [](const TransferredKernel& t) {
        return "<TransferredKernel dim=" + std::to_string(t.dim()) +
               " leakage=" + std::to_string(t.leakage) + ">";
      });

  py::class_<CountLaw>(mod, "CountLaw")
      .def_property_readonly("caps",
                             [](const CountLaw& l) { return l.caps; })
      .def_property_readonly("labels",
                             [](const CountLaw& l) { return l.labels; })
      .def_property_readonly("arity", &CountLaw::arity)
      .def_property_readonly(
          "n_samples", [](const CountLaw& l) { return l.n_samples; })
      .def_property_readonly(
          "pmf",
          [](const CountLaw& l) {
            std::vector<py::ssize_t> shape;
            for (int c : l.caps) shape.push_back(c + 1);
            py::array_t<double> a(shape);
            std::copy(l.pmf.begin(), l.pmf.end(), a.mutable_data());
            return a;
          })
      .def("prob", &CountLaw::prob, py::arg("counts"))
      .def("total", &CountLaw::total)
      .def("marginal", &CountLaw::marginal, py::arg("coord"))
      .def("merged", &CountLaw::merged, py::arg("groups"))
      .def("total_count", &CountLaw::total_count)
      .def("__repr__", [](const CountLaw& l) {
        return "<CountLaw arity=" + std::to_string(l.arity()) + ">";
      });

  mod.def("constant_rank1", &preset_constant_rank1);
  mod.def("fourier_projection", &preset_fourier_projection, py::arg("rank"),
          py::arg("max_degree") = 32);
  mod.def("legendre_kernel", &preset_legendre, py::arg("eigenvalues"));
  mod.def(
      "diag_kernel",
      [](const std::vector<double>& probs) { return to_numpy(preset_diag(probs)); },
      py::arg("probs"));
  mod.def(
      "discretized_sine",
      [](int n, double bandwidth) {
        return to_numpy(preset_discretized_sine(n, bandwidth));
      },
      py::arg("n"), py::arg("bandwidth") = 0.3);
  mod.def(
      "random_contraction",
      [](int n, std::uint64_t seed, double lambda_min, double lambda_max) {
        return to_numpy(random_contraction(n, seed, lambda_min, lambda_max));
      },
      py::arg("n"), py::arg("seed"), py::arg("lambda_min") = 0.05,
      py::arg("lambda_max") = 0.95);
  mod.def(
      "matrix_kernel",
      [](const NpMatrix& q) { return spectral_from_matrix(to_matrix(q)); },
      py::arg("q"), "spectral form of a symmetric contraction matrix");

  mod.def(
      "transfer",
      [](const SpectralKernel& k, int cells, double tol, int max_degree) {
        return transfer_kernel(k, make_partition(k.space, cells), tol,
                               max_degree);
      },
      py::arg("kernel"), py::arg("cells"), py::arg("tol") = 1e-10,
      py::arg("max_degree") = 32,
      "discretize onto a uniform partition so block counts match cell counts");

  mod.def(
      "joint_law",
      [](const SpectralKernel& k, int cells) {
        return joint_law(k, make_partition(k.space, cells).cells());
      },
      py::arg("kernel"), py::arg("cells"));
  mod.def(
      "joint_law_matrix",
      [](const NpMatrix& q, const std::vector<std::vector<int>>& blocks) {
        return joint_law(to_matrix(q), blocks);
      },
      py::arg("q"), py::arg("blocks"));
  mod.def(
      "block_law",
      [](const TransferredKernel& t) { return joint_law(t); },
      py::arg("transferred"));

  mod.def("tv_distance", &tv_distance, py::arg("a"), py::arg("b"));

  mod.def(
      "verify_transference",
      [](const SpectralKernel& k, int cells, double tol) {
        const Partition p = make_partition(k.space, cells);
        const TransferredKernel q = transfer_kernel(k, p, tol);
        const TransferenceReport r = verify_transference(k, p, q);
        py::dict d;
        d["tv"] = r.tv;
        d["leakage"] = r.leakage;
        d["bound"] = r.bound;
        d["spectrum_gap"] = r.spectrum_gap;
        d["imag_residue"] = r.imag_residue;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("kernel"), py::arg("cells"), py::arg("tol") = 1e-10);

  mod.def(
      "sample",
      [](const NpMatrix& q, std::uint64_t seed, std::int64_t n_samples) {
        const DppSampler sampler(to_matrix(q));
        RngStream rng(seed, 0);
        std::vector<std::vector<int>> out;
        out.reserve(static_cast<std::size_t>(n_samples));
        for (std::int64_t i = 0; i < n_samples; ++i)
          out.push_back(sampler.sample(rng).sites);
        return out;
      },
      py::arg("q"), py::arg("seed"), py::arg("n_samples") = 1);

  mod.def(
      "sample_counts",
      [](const NpMatrix& q, const std::vector<std::vector<int>>& blocks,
         std::uint64_t seed, std::int64_t n_samples) {
        RngStream rng(seed, 0);
        return sample_counts(to_matrix(q), blocks, rng, n_samples);
      },
      py::arg("q"), py::arg("blocks"), py::arg("seed"), py::arg("n_samples"));

  mod.def(
      "chi_square",
      [](const CountLaw& exact, const CountLaw& empirical) {
        const ChiSquareReport r = empirical_vs_exact(exact, empirical);
        py::dict d;
        d["statistic"] = r.statistic;
        d["dof"] = r.dof;
        d["p_value"] = r.p_value;
        d["atoms"] = r.atoms;
        d["n_samples"] = r.n_samples;
        return d;
      },
      py::arg("exact"), py::arg("empirical"));
}
