#include "dset/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dset/error.hpp"

namespace dset::io {

namespace {

// Reads significant lines: '#' starts a comment, blank lines are skipped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t\r");
      return line.substr(b, e - b + 1);
    }
    return std::nullopt;
  }

  std::string require() {
    auto l = next();
    if (!l) fail(ErrorCode::ParseError, "unexpected end of input after line " + std::to_string(lineno_));
    return *l;
  }

  // "key rest" with the key checked.
  std::string field(const std::string& key) {
    std::string l = require();
    if (l.compare(0, key.size(), key) != 0 || (l.size() > key.size() && l[key.size()] != ' '))
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno_) + ": expected '" + key + "', got '" + l + "'");
    auto rest = l.substr(key.size());
    auto b = rest.find_first_not_of(' ');
    return b == std::string::npos ? std::string() : rest.substr(b);
  }

  std::size_t line() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::int64_t to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "not an integer: '" + s + "'");
  }
}

std::vector<std::int64_t> split_ints(const std::string& s, char sep) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    auto b = tok.find_first_not_of(' ');
    auto e = tok.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(to_int(tok.substr(b, e - b + 1)));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

std::string word_text(const std::vector<std::size_t>& w) { return w.empty() ? "-" : join(w, " "); }

std::vector<std::size_t> parse_word(const std::string& s) {
  std::vector<std::size_t> w;
  if (s == "-") return w;
  for (auto v : split_ints(s, ' ')) {
    if (v < 0) fail(ErrorCode::ParseError, "negative automorphism index");
    w.push_back(static_cast<std::size_t>(v));
  }
  return w;
}

CandidateGenerator parse_gen(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "generator needs 'word : base'");
  auto trim = [](std::string x) {
    auto b = x.find_first_not_of(' ');
    auto e = x.find_last_not_of(' ');
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  return {parse_word(trim(s.substr(0, colon))), static_cast<Elem>(to_int(trim(s.substr(colon + 1))))};
}

void write_group_block(std::ostream& out, const Group& g) {
  if (auto ab = dynamic_cast<const AbelianGroup*>(&g)) {
    out << "kind abelian\n";
    out << "orders " << join(ab->orders()) << "\n";
    return;
  }
  auto ext = dynamic_cast<const ExtensionGroup*>(&g);
  if (!ext) fail(ErrorCode::InvalidArgument, "group kind cannot be serialized");
  out << "kind extension\n";
  out << "base begin\n";
  write_group_block(out, ext->base());
  out << "base end\n";
  const auto& auts = ext->auts().generators();
  out << "auts " << auts.size() << "\n";
  for (const auto& a : auts) out << "aut " << join(a.generator_images()) << "\n";
  const auto& gens = ext->candidate_generators();
  out << "gens " << gens.size() << "\n";
  for (const auto& c : gens) out << "gen " << word_text(c.aut_word) << " : " << c.base << "\n";
  out << "cap " << ext->order() << "\n";
}

GroupPtr read_group_block(LineReader& r) {
  std::string kind = r.field("kind");
  if (kind == "abelian") {
    std::vector<std::uint32_t> orders;
    for (auto v : split_ints(r.field("orders"), ',')) {
      if (v < 2 || v > (1 << 30)) fail(ErrorCode::ParseError, "bad cyclic order " + std::to_string(v));
      orders.push_back(static_cast<std::uint32_t>(v));
    }
    if (orders.empty()) fail(ErrorCode::ParseError, "abelian group without orders");
    return abelian_make(std::move(orders));
  }
  if (kind != "extension") fail(ErrorCode::ParseError, "unknown group kind '" + kind + "'");
  if (r.require() != "base begin") fail(ErrorCode::ParseError, "expected 'base begin'");
  GroupPtr base = read_group_block(r);
  if (r.require() != "base end") fail(ErrorCode::ParseError, "expected 'base end'");
  const auto n_auts = to_int(r.field("auts"));
  std::vector<GroupAutomorphism> auts;
  for (std::int64_t i = 0; i < n_auts; ++i) {
    std::vector<Elem> images;
    for (auto v : split_ints(r.field("aut"), ',')) {
      if (v < 0 || static_cast<std::size_t>(v) >= base->order()) fail(ErrorCode::ParseError, "image out of range");
      images.push_back(static_cast<Elem>(v));
    }
    auts.push_back(aut_from_images(base, images));
  }
  const auto n_gens = to_int(r.field("gens"));
  std::vector<CandidateGenerator> gens;
  for (std::int64_t i = 0; i < n_gens; ++i) gens.push_back(parse_gen(r.field("gen")));
  const auto cap = to_int(r.field("cap"));
  return ExtensionGroup::closure(base, std::move(auts), std::move(gens), static_cast<std::size_t>(cap));
}

}  // namespace

void write_group(std::ostream& out, const Group& g) {
  out << "# group " << g.describe() << "\n";
  write_group_block(out, g);
  out << "elements " << g.order() << "\n";
  for (Elem e = 0; e < g.order(); ++e) out << join(g.coords(e)) << "\n";
}

GroupPtr read_group(std::istream& in) {
  LineReader r(in);
  GroupPtr g = read_group_block(r);
  const auto n = to_int(r.field("elements"));
  if (static_cast<std::size_t>(n) != g->order())
    fail(ErrorCode::ParseError, "element count " + std::to_string(n) + " but the group has order " +
                                    std::to_string(g->order()));
  for (Elem e = 0; e < g->order(); ++e) {
    auto c = split_ints(r.require(), ',');
    if (c != g->coords(e))
      fail(ErrorCode::ParseError, "element " + std::to_string(e) + " does not match the rebuilt enumeration");
  }
  return g;
}

void write_design(std::ostream& out, const DesignSet& d, const std::string& group_file) {
  out << "# design " << d.claimed().to_string() << "\n";
  out << "group " << group_file << "\n";
  out << "kind " << kind_name(d.kind()) << "\n";
  out << "claimed " << join(d.claimed().values) << "\n";
  if (d.forbidden()) out << "forbidden " << join(d.forbidden()->members) << "\n";
  out << "members " << d.size() << "\n";
  for (auto m : d.members()) out << m << "\n";
}

std::string design_group_file(std::istream& in) {
  LineReader r(in);
  return r.field("group");
}

DesignSet read_design(std::istream& in, const GroupPtr& group) {
  LineReader r(in);
  r.field("group");
  DesignKind kind;
  try {
    kind = parse_kind(r.field("kind"));
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  auto vals = split_ints(r.field("claimed"), ',');
  DesignParams params;
  params.kind = kind;
  params.values = vals;
  if (vals.size() != (kind == DesignKind::DS ? 3u : 4u)) fail(ErrorCode::ParseError, "wrong parameter count");
  std::optional<Subgroup> forbidden;
  std::string line = r.require();
  if (line.rfind("forbidden", 0) == 0) {
    std::vector<Elem> us;
    for (auto v : split_ints(line.substr(9), ',')) {
      if (v < 0 || static_cast<std::size_t>(v) >= group->order()) fail(ErrorCode::ParseError, "forbidden member out of range");
      us.push_back(static_cast<Elem>(v));
    }
    forbidden = subset_as_subgroup(group, us);
    line = r.require();
  }
  if (line.rfind("members ", 0) != 0) fail(ErrorCode::ParseError, "expected 'members N'");
  const auto n = to_int(line.substr(8));
  std::vector<Elem> members;
  for (std::int64_t i = 0; i < n; ++i) {
    auto v = to_int(r.require());
    if (v < 0) fail(ErrorCode::ParseError, "negative member");
    members.push_back(static_cast<Elem>(v));
  }
  if (r.next()) fail(ErrorCode::ParseError, "trailing data after the member list");
  return DesignSet(group, std::move(members), params, std::move(forbidden));
}

void write_instance(std::ostream& out, const TransferInstance& inst, const std::string& group_file,
                    const std::string& design_file) {
  out << "# transfer instance\n";
  out << "group " << group_file << "\n";
  out << "design " << design_file << "\n";
  out << "auts " << inst.aut_gens.size() << "\n";
  for (const auto& a : inst.aut_gens) out << "aut " << join(a.generator_images()) << "\n";
  out << "gens " << inst.candidate_gens.size() << "\n";
  for (const auto& c : inst.candidate_gens) out << "gen " << word_text(c.aut_word) << " : " << c.base << "\n";
  out << "cap " << inst.closure_cap << "\n";
}

TransferInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  LineReader r(in);
  const auto dir = path.parent_path();
  GroupPtr g = load_group(dir / r.field("group"));
  DesignSet d = [&] {
    auto p = dir / r.field("design");
    std::ifstream din(p);
    if (!din) fail(ErrorCode::ParseError, "cannot open " + p.string());
    return read_design(din, g);
  }();
  const auto n_auts = to_int(r.field("auts"));
  std::vector<GroupAutomorphism> auts;
  for (std::int64_t i = 0; i < n_auts; ++i) {
    std::vector<Elem> images;
    for (auto v : split_ints(r.field("aut"), ',')) {
      if (v < 0 || static_cast<std::size_t>(v) >= g->order()) fail(ErrorCode::ParseError, "image out of range");
      images.push_back(static_cast<Elem>(v));
    }
    auts.push_back(aut_from_images(g, images));
  }
  const auto n_gens = to_int(r.field("gens"));
  std::vector<CandidateGenerator> gens;
  for (std::int64_t i = 0; i < n_gens; ++i) {
    auto c = parse_gen(r.field("gen"));
    for (auto w : c.aut_word)
      if (w >= auts.size()) fail(ErrorCode::ParseError, "automorphism index out of range");
    if (c.base >= g->order()) fail(ErrorCode::ParseError, "generator base out of range");
    gens.push_back(std::move(c));
  }
  const auto cap = to_int(r.field("cap"));
  return make_transfer_instance(std::move(d), std::move(auts), std::move(gens), static_cast<std::size_t>(cap));
}

void write_report(std::ostream& out, const TransferReport& r, const std::vector<Claim>& claims) {
  out << r.conditions_text();
  if (r.x_subgroup) out << "X order " << r.x_subgroup->order() << "\n";
  if (r.new_group) out << "new group " << r.new_group->describe() << "\n";
  if (r.source_verification) out << "source " << r.source_verification->summary() << "\n";
  if (r.new_verification) out << "result " << r.new_verification->summary() << "\n";
  if (r.new_forbidden) out << "forbidden subgroup order " << r.new_forbidden->order() << "\n";
  if (r.new_group) {
    out << "fingerprint\n";
    std::istringstream fp(fingerprint(*r.new_group).to_string(r.new_group.get()));
    std::string line;
    while (std::getline(fp, line)) out << "  " << line << "\n";
  }
  for (const auto& c : claims) {
    out << "claim " << c.name << ": ";
    if (!c.applicable)
      out << "n/a";
    else
      out << (c.holds ? "true" : "false");
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
}

void export_edges(std::ostream& out, const DesignSet& d) {
  const Group& g = *d.group();
  const bool directed = !is_inverse_closed(g, d.members());
  out << "# cayley graph vertices " << g.order() << " connection set " << d.size()
      << (directed ? " directed" : " undirected") << "\n";
  for (Elem x = 0; x < g.order(); ++x)
    for (auto m : d.members()) {
      Elem y = g.mul(m, x);
      if (!directed && y < x) continue;
      out << x << " " << y << "\n";
    }
}

void export_dot(std::ostream& out, const DesignSet& d) {
  const Group& g = *d.group();
  const bool directed = !is_inverse_closed(g, d.members());
  out << (directed ? "digraph" : "graph") << " cayley {\n";
  for (Elem x = 0; x < g.order(); ++x) out << "  " << x << " [label=\"" << g.format(x) << "\"];\n";
  const char* arrow = directed ? " -> " : " -- ";
  for (Elem x = 0; x < g.order(); ++x)
    for (auto m : d.members()) {
      Elem y = g.mul(m, x);
      if (!directed && y < x) continue;
      out << "  " << x << arrow << y << ";\n";
    }
  out << "}\n";
}

GroupPtr load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  return read_group(in);
}

DesignSet load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  std::string gf = design_group_file(in);
  GroupPtr g = load_group(path.parent_path() / gf);
  in.clear();
  in.seekg(0);
  return read_design(in, g);
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace dset::io
