#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glcoh/cohomology.hpp"
#include "glcoh/errors.hpp"
#include "glcoh/gmodule.hpp"
#include "glcoh/io.hpp"
#include "glcoh/matgroup.hpp"
#include "glcoh/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::uint32_t p = 5;
  std::uint32_t n = 1;
  std::uint64_t seed = 0;
  std::size_t cap = 20000;
  double budget = 60.0;
  int workers = 0;
  std::string output = "json";
  std::string out_path;
  std::vector<std::string> group_args;  // literals or one file path
  std::vector<std::string> check_ids;
  bool all_checks = false;
  bool p_given = false;
  bool n_given = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + opt.out_path);
  out << text;
}

// A group argument is an inline literal when it starts with '['; a single
// non-literal argument names a group description file.
glcoh::MatrixGroup build_group(const Options& opt) {
  using namespace glcoh;
  if (opt.group_args.empty())
    throw ParseError("no generators were given", 1, 1);
  if (opt.group_args.size() == 1 && opt.group_args[0].find('[') != 0) {
    std::ifstream in(opt.group_args[0], std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot read group file " + opt.group_args[0]);
    std::ostringstream buf;
    buf << in.rdbuf();
    GroupFile gf = parse_group_file(buf.str());
    if ((opt.p_given && gf.ring.p != opt.p) ||
        (opt.n_given && gf.ring.n != opt.n))
      throw std::runtime_error(
          "group file declares mod " + std::to_string(gf.ring.p) + "^" +
          std::to_string(gf.ring.n) + " but -p/-n ask for mod " +
          std::to_string(opt.p) + "^" + std::to_string(opt.n));
    return MatrixGroup::close(gf.ring, gf.generators, opt.cap);
  }
  Ring ring(opt.p, opt.n);
  std::vector<RingMatrix> gens;
  for (const std::string& text : opt.group_args)
    gens.push_back(parse_matrix_literal(text, &ring));
  return MatrixGroup::close(ring, gens, opt.cap);
}

int cmd_close(const Options& opt) {
  using namespace glcoh;
  MatrixGroup g = build_group(opt);
  const Ring& r = g.ring();

  std::vector<Submodule> lines = invariant_lines(g);
  std::vector<std::string> line_strs;
  for (const Submodule& s : lines) {
    const std::uint32_t* v = s.basis().row(0);
    line_strs.push_back("[" + std::to_string(v[0]) + "," +
                        std::to_string(v[1]) + "]");
  }
  MatrixGroup g1 = r.n == 2 ? reduction_split(g).image : g;
  Classification cls = classify_mod_p(g1);

  if (opt.output == "json") {
    nlohmann::json j;
    j["modulus"] = r.modulus;
    j["order"] = g.order();
    j["diagonal_part_order"] = diagonal_part(g).order();
    j["det_image"] = det_image(g, r.modulus);
    j["invariant_lines"] = line_strs;
    j["line_count"] = line_strs.size();
    j["classification"] = class_tag_name(cls.tag);
    if (r.n == 2)
      j["kernel_dim"] = reduction_kernel_dim(reduction_split(g).kernel);
    emit(opt, j.dump(2) + "\n");
    return kExitPass;
  }
  std::ostringstream out;
  out << "modulus: " << r.modulus << "\n";
  out << "order: " << g.order() << "\n";
  out << "diagonal part order: " << diagonal_part(g).order() << "\n";
  out << "det image:";
  for (std::uint32_t d : det_image(g, r.modulus)) out << " " << d;
  out << "\n";
  out << "invariant lines: " << line_strs.size();
  for (const std::string& s : line_strs) out << " " << s;
  out << "\n";
  if (r.n == 2)
    out << "kernel dim: " << reduction_kernel_dim(reduction_split(g).kernel)
        << "\n";
  out << "classification: " << class_tag_name(cls.tag) << "\n";
  emit(opt, out.str());
  return kExitPass;
}

int cmd_h1(const Options& opt, bool local_only) {
  using namespace glcoh;
  MatrixGroup g = build_group(opt);
  GModule m = GModule::full(g.ring());
  CohomologyGroup loc = h1_loc(g, m);
  CohomologyGroup shown = local_only ? loc : h1(g, m);
  emit(opt, cohomology_json(shown, loc.invariants));
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  using namespace glcoh;
  std::vector<VerdictReport> reports;
  if (opt.all_checks) {
    reports = run_all_checks(opt.p, opt.seed, opt.budget, opt.workers);
  } else {
    if (opt.check_ids.empty())
      throw UnknownCheck("verify needs check ids or --all");
    set_worker_count(opt.workers);
    for (const std::string& id : opt.check_ids) {
      CheckSpec spec;
      spec.id = id;
      spec.p = opt.p;
      spec.n = default_check_level(id);
      spec.seed = opt.seed;
      spec.budget_secs = opt.budget;
      reports.push_back(run_check(spec));
    }
  }
  emit(opt, opt.output == "json" ? report_json(reports)
                                 : report_table(reports));
  return exit_status(reports);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Subgroups of GL2(Z/p^n): closure, first-cohomology queries, and a "
      "statement-verification suite"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto add_common = [&](CLI::App* cmd, bool group_cmd) {
    cmd->add_option("-p", opt.p, "prime modulus base (5 <= p <= 97)");
    cmd->add_option("-n", opt.n, "power of p: 1 or 2");
    cmd->add_option("--seed", opt.seed, "root seed for sampled families");
    cmd->add_option("--cap", opt.cap, "group closure element budget");
    cmd->add_option("--output", opt.output, "report format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--out", opt.out_path, "write the report to a file");
    // Literals are taken verbatim from the unparsed remainder; a regular
    // vector positional would re-tokenize bracketed arguments.
    if (group_cmd) cmd->allow_extras();
  };

  CLI::App* close_cmd =
      app.add_subcommand("close", "close a generator set and summarize it");
  add_common(close_cmd, true);
  CLI::App* h1_cmd = app.add_subcommand(
      "h1", "first cohomology of the group acting on (Z/p^n)^2");
  add_common(h1_cmd, true);
  CLI::App* h1loc_cmd = app.add_subcommand(
      "h1loc", "classes that restrict trivially to every cyclic subgroup");
  add_common(h1loc_cmd, true);
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run statement checks from the registry");
  add_common(verify_cmd, false);
  verify_cmd->add_option("ids", opt.check_ids, "registry ids to run");
  verify_cmd->add_flag("--all", opt.all_checks, "run the whole registry");
  verify_cmd->add_option("--budget", opt.budget,
                         "per-check budget in seconds (under 60 shrinks the "
                         "sampling plan deterministically)");
  verify_cmd->add_option("--workers", opt.workers,
                         "per-group parallelism (0 = library default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().at(0);
  opt.p_given = sub->count("-p") > 0;
  opt.n_given = sub->count("-n") > 0;
  opt.group_args = sub->remaining();

  try {
    if (close_cmd->parsed()) return cmd_close(opt);
    if (h1_cmd->parsed()) return cmd_h1(opt, false);
    if (h1loc_cmd->parsed()) return cmd_h1(opt, true);
    return cmd_verify(opt);
  } catch (const glcoh::ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.column
              << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const glcoh::UnknownCheck& e) {
    std::cerr << e.what() << "\nregistered checks:\n";
    for (const std::string& id : glcoh::check_registry())
      std::cerr << "  " << id << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
