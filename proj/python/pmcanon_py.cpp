#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pmcanon/pmcanon.hpp"

namespace py = pybind11;
using namespace pmcanon;

namespace {

std::vector<std::vector<int>> to_lists(const Matrix& a) {
  std::vector<std::vector<int>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(a(i, j));
  return out;
}

py::int_ to_pyint(const BigCount& v) {
  return py::int_(py::module_::import("builtins").attr("int")(v.str()));
}

template <class Tag>
py::list code_values(const Code<Tag>& code) {
  py::list out;
  for (std::size_t k = 0; k < code.size(); ++k) {
    BigCount v = 0;
    for (Digit d : code.element(k)) v = v * code.base() + d;
    out.append(to_pyint(v));
  }
  return out;
}

py::tuple perm_pair(const PermPair& pp) {
  return py::make_tuple(pp.rows.image(), pp.cols.image());
}

PermPair from_images(const std::vector<std::uint32_t>& rows,
                     const std::vector<std::uint32_t>& cols) {
  return {Permutation(rows), Permutation(cols)};
}

py::dict report_dict(const CanonicityReport& rep) {
  py::list conds;
  for (const auto& c : rep.conditions) {
    const char* status = c.status == ConditionStatus::pass   ? "pass"
                         : c.status == ConditionStatus::fail ? "fail"
                                                             : "n/a";
    conds.append(py::make_tuple(status, c.reason));
  }
  py::dict d;
  d["verdict"] = rep.verdict;
  d["conditions"] = conds;
  d["failing_witness"] = rep.failing_witness ? py::cast(*rep.failing_witness)
                                             : py::none();
  d["text"] = format_report(rep);
  return d;
}

EnumerationOptions make_options(const std::string& check, unsigned workers,
                                std::uint64_t budget) {
  EnumerationOptions opt;
  if (check == "exact")
    opt.check = CompletionCheck::exact;
  else if (check == "theorem")
    opt.check = CompletionCheck::theorem;
  else
    throw ContractError("check must be 'exact' or 'theorem'");
  opt.workers = workers;
  opt.node_budget = budget;
  return opt;
}

}  // namespace

PYBIND11_MODULE(pmcanon, m) {
  m.doc() = "Canonical forms of matrices over [p] under row/column permutations";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);

  py::class_<Matrix>(m, "Matrix")
      .def(py::init([](const std::vector<std::vector<int>>& rows, unsigned p) {
             return Matrix::from_rows(p, rows);
           }),
           py::arg("rows"), py::arg("p"))
      .def_static("zeros", [](std::size_t n, std::size_t c, unsigned p) { return Matrix(n, c, p); })
      .def_static("from_text", &parse_matrix)
      .def_property_readonly("n", &Matrix::rows)
      .def_property_readonly("m", &Matrix::cols)
      .def_property_readonly("p", &Matrix::base)
      .def("rows", &to_lists)
      .def("transpose", &Matrix::transpose)
      .def("to_text", &format_matrix)
      .def("__getitem__",
           [](const Matrix& a, std::pair<std::size_t, std::size_t> ij) {
             if (ij.first >= a.rows() || ij.second >= a.cols())
               throw py::index_error("matrix index out of range");
             return static_cast<int>(a(ij.first, ij.second));
           })
      .def(py::self == py::self)
      .def("__repr__", [](const Matrix& a) {
        std::ostringstream os;
        os << "Matrix(" << py::repr(py::cast(to_lists(a))).cast<std::string>()
           << ", p=" << a.base() << ")";
        return os.str();
      });

  m.def("encode_rows", [](const Matrix& a) { return code_values(encode_rows(a)); });
  m.def("encode_cols", [](const Matrix& a) { return code_values(encode_cols(a)); });
  m.def(
      "decode_rows",
      [](const std::vector<py::int_>& codes, std::size_t width, unsigned p) {
        std::vector<Digit> digits(codes.size() * width);
        for (std::size_t k = 0; k < codes.size(); ++k) {
          BigCount v{py::str(codes[k]).cast<std::string>()};
          if (v < 0) throw RangeError("negative code value");
          for (std::size_t d = width; d-- > 0;) {
            digits[k * width + d] = static_cast<Digit>(static_cast<unsigned>(v % p));
            v /= p;
          }
          if (v != 0) throw RangeError("code value exceeds p^width - 1");
        }
        return decode_rows(RowCode(width, p, std::move(digits)));
      },
      py::arg("codes"), py::arg("width"), py::arg("p"));

  m.def("apply",
        [](const Matrix& a, const std::vector<std::uint32_t>& rows,
           const std::vector<std::uint32_t>& cols) {
          return apply(a, from_images(rows, cols));
        },
        py::arg("a"), py::arg("rows"), py::arg("cols"),
        "Permute with 0-based images: B[rows[i], cols[j]] = A[i, j].");
  m.def(
      "canonical_form",
      [](const Matrix& a, bool exhaustive) {
        auto r = exhaustive ? canonical_form(a) : pruned_canonical_form(a);
        return py::make_tuple(r.canonical, perm_pair(r.witness));
      },
      py::arg("a"), py::arg("exhaustive") = false);
  m.def("equivalent", [](const Matrix& a, const Matrix& b) -> py::object {
    auto w = equivalent(a, b);
    if (!w) return py::none();
    return perm_pair(*w);
  });
  m.def("orbit_size", &orbit_size);

  m.def("is_semi_canonical", &is_semi_canonical);
  m.def("is_canonical", [](const Matrix& a) { return report_dict(is_canonical(a)); });
  m.def("row_stats", [](const Matrix& a) {
    auto st = row_stats(a);
    py::dict d;
    d["nu"] = st.nu;
    d["zeta"] = st.zeta;
    d["zclass_start"] = st.zclass_start;
    return d;
  });
  m.def("condition5_transform", &condition5_transform, py::arg("a"), py::arg("i"));

  m.def(
      "enumerate_canonical",
      [](std::size_t n, std::size_t c, unsigned p, const std::string& check,
         unsigned workers, std::uint64_t budget) {
        py::gil_scoped_release release;
        return enumerate_canonical(n, c, p, make_options(check, workers, budget));
      },
      py::arg("n"), py::arg("m"), py::arg("p"), py::arg("check") = "exact",
      py::arg("workers") = 1, py::arg("budget") = kDefaultNodeBudget);
  m.def("burnside_count", [](std::size_t n, std::size_t c, unsigned p) {
    return to_pyint(burnside_count(n, c, p));
  });
  m.def(
      "census",
      [](std::size_t n, std::size_t c, unsigned p, const std::string& check) {
        auto cs = census(n, c, p, CensusMode::count_only,
                         make_options(check, 1, kDefaultNodeBudget), false);
        py::dict d;
        d["count"] = cs.count;
        d["burnside"] = cs.burnside ? py::object(to_pyint(*cs.burnside)) : py::none();
        d["agree"] = cs.agree;
        return d;
      },
      py::arg("n"), py::arg("m"), py::arg("p"), py::arg("check") = "exact");

  m.def("is_hadamard", &is_hadamard);
  m.def("is_weighing", &is_weighing, py::arg("a"), py::arg("k"));
  m.def("classify_hadamard",
        [](std::size_t n) { return classify_hadamard(n).representatives; });
  m.def("classify_weighing", [](std::size_t n, std::size_t k) {
    return classify_weighing(n, k).representatives;
  });
}
