#include "dset/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dset/error.hpp"
#include "dset/families.hpp"
#include "dset/io.hpp"

namespace dset::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string family;
  FamilyParams params;
  std::string out;
  std::string instance;
  std::string design;
  std::string format = "edges";
  bool srg = false;
};

void add_family_flags(CLI::App* sub, Options& o) {
  sub->add_option("family_pos", o.family, "family name");
  sub->add_option("--family", o.family, "family name");
  auto num = [&](const char* flag, std::optional<unsigned>& slot) {
    sub->add_option_function<unsigned>(flag, [&slot](const unsigned& v) { slot = v; }, "family parameter");
  };
  num("--p", o.params.p);
  num("--q", o.params.q);
  num("--d", o.params.d);
  num("--m", o.params.m);
  num("--n", o.params.n);
  num("--r", o.params.r);
  num("--s", o.params.s);
  num("--t", o.params.t);
  num("--k", o.params.k);
  num("--variant", o.params.variant);
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string to_text(const auto& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

// Writes PREFIX.group.txt, PREFIX.design.txt and, for transfer families,
// PREFIX.instance.txt; returns the file names.
std::vector<std::string> write_construction(const Construction& c, const fs::path& prefix) {
  const std::string stem = prefix.filename().string();
  const fs::path dir = prefix.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const std::string gname = stem + ".group.txt", dname = stem + ".design.txt";
  io::save_text(dir / gname, to_text([&](std::ostream& s) { io::write_group(s, *c.design().group()); }));
  io::save_text(dir / dname, to_text([&](std::ostream& s) { io::write_design(s, c.design(), gname); }));
  std::vector<std::string> files{gname, dname};
  if (c.instance) {
    const std::string iname = stem + ".instance.txt";
    io::save_text(dir / iname, to_text([&](std::ostream& s) { io::write_instance(s, *c.instance, gname, dname); }));
    files.push_back(iname);
  }
  return files;
}

Construction build(const Options& o) {
  if (o.family.empty()) fail(ErrorCode::InvalidArgument, "a family name is required");
  return build_family(o.family, o.params);
}

int cmd_construct(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  auto t0 = Clock::now();
  Construction c = build(o);
  const double t_build = ms_since(t0);
  t0 = Clock::now();
  Verification v = verify(c.design());
  const double t_verify = ms_since(t0);
  const fs::path prefix = o.out.empty() ? fs::path(c.family) : fs::path(o.out);
  auto files = write_construction(c, prefix);

  std::ostringstream m;
  m << "command";
  for (const auto& a : args) m << " " << a;
  m << "\nfamily " << c.family << "\nparams " << c.params << "\n";
  m << "determinism: no randomness; canonical choices only\n";
  m << "files";
  for (const auto& f : files) m << " " << f;
  m << "\nverification " << v.summary() << "\n";
  m << "time build_ms " << t_build << "\ntime verify_ms " << t_verify << "\n";
  for (const auto& l : c.log) m << "log " << l << "\n";
  io::save_text(fs::path(prefix.string() + ".manifest.txt"), m.str());

  out << c.family << (c.params.empty() ? "" : " " + c.params) << "\n";
  out << c.design().group()->describe() << "\n";
  out << v.summary() << "\n";
  for (const auto& l : c.log) out << "log " << l << "\n";
  out << "wrote " << prefix.string() << ".{group,design" << (c.instance ? ",instance" : "") << ",manifest}.txt\n";
  return kOk;
}

int cmd_transfer(const Options& o, std::ostream& out) {
  std::optional<Construction> c;
  TransferInstance inst = [&] {
    if (!o.instance.empty()) return io::read_instance(o.instance);
    if (!o.design.empty()) {
      // A bare design transfers along the identity: 1 x G itself.
      DesignSet d = io::load_design(o.design);
      return make_transfer_instance(d, {}, identity_generators(*d.group()));
    }
    c = build(o);
    if (!c->instance) fail(ErrorCode::InvalidArgument, "family '" + c->family + "' has no transfer instance");
    return *c->instance;
  }();
  TransferReport checked = check_conditions(inst);
  if (!checked.all_hold()) {
    out << checked.conditions_text();
    out << "transfer conditions failed\n";
    return kMath;
  }
  TransferReport r = transfer(inst);
  std::vector<Claim> claims = c ? evaluate_claims(*c, r) : std::vector<Claim>{};
  std::string report = to_text([&](std::ostream& s) { io::write_report(s, r, claims); });
  out << report;
  if (!o.out.empty()) {
    const fs::path prefix(o.out);
    if (!prefix.parent_path().empty()) fs::create_directories(prefix.parent_path());
    const std::string stem = prefix.filename().string();
    const std::string gname = stem + ".group.txt", dname = stem + ".design.txt";
    io::save_text(prefix.parent_path() / gname, to_text([&](std::ostream& s) { io::write_group(s, *r.new_group); }));
    io::save_text(prefix.parent_path() / dname,
                  to_text([&](std::ostream& s) { io::write_design(s, *r.new_design, gname); }));
    io::save_text(fs::path(prefix.string() + ".report.txt"), report);
    out << "wrote " << prefix.string() << ".{group,design,report}.txt\n";
  }
  for (const auto& cl : claims)
    if (cl.applicable && !cl.holds) return kMath;
  return kOk;
}

DesignSet design_input(const Options& o) {
  if (!o.design.empty()) return io::load_design(o.design);
  return build(o).design();
}

int cmd_verify(const Options& o, std::ostream& out) {
  DesignSet d = design_input(o);
  Verification v = verify(d);
  out << v.summary() << "\n";
  if (d.kind() == DesignKind::PDS) out << "regular " << (v.regular ? "true" : "false") << "\n";
  if (d.forbidden()) out << "forbidden subgroup order " << d.forbidden()->order() << "\n";
  if (o.srg) {
    if (d.kind() == DesignKind::PDS && v.regular)
      out << "srg " << cayley_srg_check(d).to_string() << "\n";
    else
      out << "srg n/a (only a regular PDS gives a strongly regular Cayley graph)\n";
  }
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  DesignSet d = design_input(o);
  std::string text;
  if (o.format == "edges")
    text = to_text([&](std::ostream& s) { io::export_edges(s, d); });
  else if (o.format == "dot")
    text = to_text([&](std::ostream& s) { io::export_dot(s, d); });
  else
    fail(ErrorCode::InvalidArgument, "format must be edges or dot");
  if (o.out.empty()) {
    out << text;
  } else {
    io::save_text(o.out, text);
    out << "wrote " << o.out << " (" << d.group()->order() << " vertices, degree " << d.size() << ")\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Difference-set constructions and combinatorial transfer"};
  app.require_subcommand(1);
  Options o;
  auto* construct = app.add_subcommand("construct", "build a family, verify it and write its files");
  add_family_flags(construct, o);
  construct->add_option("--out", o.out, "output prefix");
  auto* tr = app.add_subcommand("transfer", "run the transfer engine on a family or an instance file");
  add_family_flags(tr, o);
  tr->add_option("--instance", o.instance, "instance file");
  tr->add_option("--design", o.design, "design file, transferred along the identity");
  tr->add_option("--out", o.out, "output prefix");
  auto* ver = app.add_subcommand("verify", "verify a design file or family");
  add_family_flags(ver, o);
  ver->add_option("--design", o.design, "design file");
  ver->add_flag("--srg", o.srg, "cross-check the Cayley graph");
  auto* ex = app.add_subcommand("export", "write the Cayley graph");
  add_family_flags(ex, o);
  ex->add_option("--design", o.design, "design file");
  ex->add_option("--format", o.format, "edges or dot");
  ex->add_option("--out", o.out, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  try {
    if (*construct) return cmd_construct(o, args, out);
    if (*tr) return cmd_transfer(o, out);
    if (*ver) return cmd_verify(o, out);
    if (*ex) return cmd_export(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_math_failure(e.code()) ? kMath : kUsage;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dset::cli
