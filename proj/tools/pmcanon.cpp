// pmcanon: canonical forms of matrices over [p] under row/column permutations.
//
// Exit codes: 0 success, 2 parse/usage, 3 digit out of range, 4 budget
// exceeded, 5 integrity failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmcanon/pmcanon.hpp"

namespace {

using namespace pmcanon;
using json = nlohmann::json;

enum Exit : int {
  kOk = 0,
  kParse = 2,
  kRange = 3,
  kBudget = 4,
  kIntegrity = 5,
};

struct RunManifest {
  std::vector<std::string> command;
  std::string input_digest;
  std::size_t n = 0, m = 0;
  unsigned p = 0;
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned workers = 1;
  std::uint64_t nodes = 0;
  std::string result;

  void shape(const Matrix& a) {
    n = a.rows();
    m = a.cols();
    p = a.base();
  }
};

std::string fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string slurp(const std::string& path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

Matrix load(const std::string& path, RunManifest& mf) {
  const auto text = slurp(path);
  mf.input_digest = fnv1a64(text);
  auto a = parse_matrix(text);
  mf.shape(a);
  return a;
}

std::string images_1based(const Permutation& perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(perm(i) + 1);
  }
  return out;
}

std::optional<MatrixFilter> parse_filter(const std::string& text, std::size_t n,
                                         std::size_t m, unsigned p,
                                         std::string& header) {
  if (text.empty()) return std::nullopt;
  if (n != m) throw ContractError("--filter needs a square shape");
  if (p != 3) throw ContractError("--filter needs p = 3");
  if (text == "hadamard") {
    header = "predicate=hadamard k=" + std::to_string(n);
    return hadamard_filter(n);
  }
  const std::string prefix = "weighing:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(text.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ContractError("--filter weighing:K needs an integer K");
    }
    header = "predicate=weighing k=" + std::to_string(k);
    return weighing_filter(n, k);
  }
  throw ContractError("unknown filter '" + text + "'");
}

// Writes the census stream; returns the emitted count.
std::uint64_t stream_enumeration(std::size_t n, std::size_t m, unsigned p,
                                 const EnumerationOptions& opt,
                                 const std::string& header, RunManifest& mf) {
  StreamWriter w(std::cout);
  if (!header.empty()) w.comment(header);
  auto st = enumerate_canonical(n, m, p, opt, [&](const Matrix& a) { w.write(a); });
  w.finish();
  mf.nodes = st.nodes;
  return st.emitted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms of matrices over [p] under row/column permutations"};
  app.require_subcommand(1);
  app.fallthrough();

  RunManifest mf;
  for (int i = 0; i < argc; ++i) mf.command.emplace_back(argv[i]);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "Write a JSON run manifest here");
  app.add_option("--budget", mf.node_budget, "Search node budget")
      ->check(CLI::PositiveNumber);

  std::string file;
  bool report = false, witness = false, exhaustive = false, count_only = false;
  std::size_t n = 0, m = 0, k = 0;
  unsigned p = 0;
  std::string filter_arg;
  std::string check_mode = "exact";

  auto* encode = app.add_subcommand("encode", "Print r(A) and c(A)");
  encode->add_option("file", file, "Matrix file ('-' for stdin)")->required();

  auto* check = app.add_subcommand("check", "Semi-canonicity and canonicity verdicts");
  check->add_option("file", file, "Matrix file ('-' for stdin)")->required();
  check->add_flag("--report", report, "Print the per-condition report");

  auto* canonize = app.add_subcommand("canonize", "Print the canonical form");
  canonize->add_option("file", file, "Matrix file ('-' for stdin)")->required();
  canonize->add_flag("--witness", witness, "Print the row/column permutations");
  canonize->add_flag("--exhaustive", exhaustive,
                     "Use the m! column-order search instead of branch and bound");

  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", mf.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
  };

  auto* enumerate = app.add_subcommand("enumerate", "All canonical n x m matrices over [p]");
  enumerate->add_option("n", n)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("m", m)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("p", p)->required()->check(CLI::Range(2u, kMaxBase));
  enumerate->add_flag("--count-only", count_only, "Print counts only");
  enumerate->add_option("--filter", filter_arg, "hadamard | weighing:K");
  enumerate->add_option("--check", check_mode, "exact | theorem")
      ->check(CLI::IsMember({"exact", "theorem"}));
  add_workers(enumerate);

  auto* count = app.add_subcommand("count", "Burnside orbit count");
  count->add_option("n", n)->required()->check(CLI::PositiveNumber);
  count->add_option("m", m)->required()->check(CLI::PositiveNumber);
  count->add_option("p", p)->required()->check(CLI::Range(2u, kMaxBase));

  auto* hadamard = app.add_subcommand("classify-hadamard", "Canonical Hadamard matrices of order n");
  hadamard->add_option("n", n)->required()->check(CLI::PositiveNumber);
  add_workers(hadamard);

  auto* weighing = app.add_subcommand("classify-weighing", "Canonical weighing matrices W(n, k)");
  weighing->add_option("n", n)->required()->check(CLI::PositiveNumber);
  weighing->add_option("k", k)->required()->check(CLI::PositiveNumber);
  add_workers(weighing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = kOk;
  std::cout.imbue(std::locale::classic());

  try {
    EnumerationOptions opt;
    opt.node_budget = mf.node_budget;
    opt.workers = mf.workers;

    if (*encode) {
      auto a = load(file, mf);
      std::cout << "r = " << encode_rows(a).render() << '\n'
                << "c = " << encode_cols(a).render() << '\n';
      mf.result = "encoded";
    } else if (*check) {
      auto a = load(file, mf);
      const bool semi = is_semi_canonical(a);
      auto rep = is_canonical(a);
      std::cout << "semi-canonical: " << (semi ? "yes" : "no") << '\n'
                << "canonical: " << (rep.verdict ? "yes" : "no") << '\n';
      if (report) std::cout << format_report(rep);
      mf.result = rep.verdict ? "canonical" : "not-canonical";
    } else if (*canonize) {
      auto a = load(file, mf);
      SearchStats st;
      auto res = exhaustive ? canonical_form(a) : pruned_canonical_form(a, &st);
      mf.nodes = st.nodes;
      if (apply(a, res.witness) != res.canonical)
        throw IntegrityError("witness does not reproduce the canonical form");
      std::cout << format_matrix(res.canonical);
      if (witness)
        std::cout << "rows: " << images_1based(res.witness.rows) << '\n'
                  << "cols: " << images_1based(res.witness.cols) << '\n';
      mf.result = "r = " + encode_rows(res.canonical).render();
    } else if (*enumerate) {
      mf.n = n;
      mf.m = m;
      mf.p = p;
      std::string header;
      // Sign matrices only exist over the p = 3 encoding.
      if (!filter_arg.empty() && p != 3) {
        std::cerr << "pmcanon: --filter reads digits as signs; using p = 3\n";
        p = 3;
        mf.p = 3;
      }
      opt.filter = parse_filter(filter_arg, n, m, p, header);
      opt.check = check_mode == "theorem" ? CompletionCheck::theorem
                                          : CompletionCheck::exact;
      if (count_only) {
        auto c = census(n, m, p, CensusMode::count_only, opt, false);
        mf.nodes = c.stats.nodes;
        if (c.burnside) {
          std::cout << "count=" << c.count << " burnside=" << c.burnside->str()
                    << " agree=" << (c.agree ? "true" : "false") << '\n';
          if (!c.agree) rc = kIntegrity;
        } else {
          std::cout << "count=" << c.count << '\n';
        }
        mf.result = "count=" + std::to_string(c.count);
      } else {
        auto emitted = stream_enumeration(n, m, p, opt, header, mf);
        mf.result = "count=" + std::to_string(emitted);
        if (!opt.filter && n <= 12 && m <= 12) {
          auto b = burnside_count(n, m, p);
          if (b != emitted) {
            std::cerr << "pmcanon: enumerated " << emitted << " classes, Burnside "
                      << b.str() << '\n';
            rc = kIntegrity;
          }
        }
      }
    } else if (*count) {
      mf.n = n;
      mf.m = m;
      mf.p = p;
      auto b = burnside_count(n, m, p);
      std::cout << "burnside=" << b.str() << '\n';
      mf.result = "burnside=" + b.str();
    } else if (*hadamard || *weighing) {
      mf.n = mf.m = n;
      mf.p = 3;
      std::string header;
      if (*hadamard) {
        opt.filter = hadamard_filter(n);
        header = "predicate=hadamard k=" + std::to_string(n);
      } else {
        opt.filter = weighing_filter(n, k);
        header = "predicate=weighing k=" + std::to_string(k);
      }
      auto emitted = stream_enumeration(n, n, 3, opt, header, mf);
      mf.result = "count=" + std::to_string(emitted);
    }
  } catch (const ParseError& e) {
    std::cerr << "pmcanon: parse error: " << e.what() << '\n';
    mf.result = std::string("parse error: ") + e.what();
    rc = kParse;
  } catch (const RangeError& e) {
    std::cerr << "pmcanon: range error: " << e.what() << '\n';
    mf.result = std::string("range error: ") + e.what();
    rc = kRange;
  } catch (const ResourceError& e) {
    std::cerr << "pmcanon: " << e.what() << '\n';
    mf.result = std::string("budget exceeded: ") + e.what();
    rc = kBudget;
  } catch (const IntegrityError& e) {
    std::cerr << "pmcanon: integrity failure: " << e.what() << '\n';
    mf.result = std::string("integrity failure: ") + e.what();
    rc = kIntegrity;
  } catch (const ContractError& e) {
    std::cerr << "pmcanon: invalid arguments: " << e.what() << '\n';
    mf.result = std::string("invalid arguments: ") + e.what();
    rc = kParse;
  }
  std::cout.flush();

  if (!manifest_path.empty()) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    json j = {
        {"command", mf.command},
        {"input_digest", mf.input_digest.empty() ? json(nullptr) : json(mf.input_digest)},
        {"shape", {{"n", mf.n}, {"m", mf.m}, {"p", mf.p}}},
        {"node_budget", mf.node_budget},
        {"workers", mf.workers},
        {"nodes", mf.nodes},
        {"exit_code", rc},
        {"result", mf.result},
        {"elapsed_ms", elapsed},
    };
    std::ofstream out(manifest_path);
    out << j.dump(2) << '\n';
  }
  return rc;
}
