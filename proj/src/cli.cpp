#include "cicpc/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "cicpc/channel_io.hpp"
#include "cicpc/conditions.hpp"
#include "cicpc/region.hpp"

namespace cicpc {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct LoadedChannel {
  ChannelLaw law;
  std::string sha256;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

LoadedChannel read_channel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedChannel("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  auto law = parse_channel(text);
  require_valid(law);
  return {std::move(law), sha256_hex(text)};
}

// 12 significant digits, no negative zero.
std::string csv_number(double v) { return format_double(v == 0.0 ? 0.0 : v, 12); }

AuxCardinalities parse_aux(const std::string& text) {
  AuxCardinalities aux;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  if (!(is >> aux.u >> c1 >> aux.v >> c2 >> aux.t) || c1 != ',' || c2 != ',' || aux.u == 0 ||
      aux.v == 0 || aux.t == 0)
    throw CLI::ValidationError("--aux-cards", "expected three positive integers u,v,t");
  return aux;
}

ordered_json config_json(const SearchConfig& cfg, const AuxCardinalities& aux) {
  ordered_json j;
  j["mu_grid_size"] = cfg.mu_grid_size;
  j["restarts"] = cfg.restarts;
  j["local_steps"] = cfg.local_steps;
  j["step_scale"] = cfg.step_scale;
  j["seed"] = cfg.seed;
  j["aux_cards"] = {{"u", aux.u}, {"v", aux.v}, {"t", aux.t}};
  j["pareto_tol"] = cfg.pareto_tol;
  j["hull"] = cfg.hull;
  return j;
}

ordered_json factor_json(const InnerFactorization& f) {
  ordered_json j;
  j["card_v"] = f.card_v;
  j["p(xr1)"] = f.f_xr1;
  j["p(x2|xr1)"] = f.f_ux2;
  j["p(v|x2,xr1)"] = f.f_v;
  j["p(x1|v,x2,xr1)"] = f.f_x1;
  return j;
}

ordered_json verdict_json(const ConditionVerdict& v, const std::string& gap) {
  ordered_json j;
  j["gap"] = gap;
  j["status"] = to_string(v.status);
  j["margin_bits"] = v.margin;
  j["witness_seed"] = v.witness_seed;
  j["witness"] = factor_json(v.witness);
  j["budget"] = {{"restarts", v.restarts}, {"samples_used", v.samples_used}, {"card_v", v.card_v}};
  return j;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

struct Options {
  std::string channel;
  std::string out;
  std::string theorem = "t1";
  std::string condition = "more-capable";
  std::string aux;
  SearchConfig cfg;
};

int cmd_classify(const Options& o, std::ostream& out) {
  const auto loaded = read_channel(o.channel);
  const auto& a = loaded.law.alphabets();
  const auto report = classify(loaded.law);
  ordered_json j;
  j["semideterministic"] = report.semideterministic;
  j["degraded"] = report.degraded;
  j["max_deviation"] = report.max_deviation;
  j["semideterministic_deviation"] = report.semideterministic_deviation;
  j["degraded_deviation"] = report.degraded_deviation;
  if (report.y1_map) {
    json map = json::array();
    for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
      json l1 = json::array();
      for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
        json l2 = json::array();
        for (std::size_t xr1 = 0; xr1 < a.xr1; ++xr1)
          l2.push_back((*report.y1_map)[loaded.law.input_index(x1, x2, xr1)]);
        l1.push_back(l2);
      }
      map.push_back(l1);
    }
    j["y1_map"] = map;
  }
  if (report.degrading_kernel) {
    json kernel = json::array();
    for (std::size_t y1 = 0; y1 < a.y1; ++y1) {
      json rows = json::array();
      for (std::size_t xr1 = 0; xr1 < a.xr1; ++xr1) {
        const auto* q = report.degrading_kernel->data() + (y1 * a.xr1 + xr1) * a.y2;
        rows.push_back(std::vector<double>(q, q + a.y2));
      }
      kernel.push_back(rows);
    }
    j["degrading_kernel"] = kernel;
  }
  if (report.degraded_witness) {
    const auto& w = *report.degraded_witness;
    j["degraded_witness"] = {{"x1", w.x1}, {"x2", w.x2}, {"xr1", w.xr1}, {"y1", w.y1}};
  }
  j["channel_sha256"] = loaded.sha256;
  write_text(o.out, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_frontier(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto theorem = parse_theorem(o.theorem);
  if (!theorem) throw CLI::ValidationError("--theorem", "expected one of t1, t2, t3, t4");
  const auto loaded = read_channel(o.channel);
  SearchConfig cfg = o.cfg;
  if (!o.aux.empty()) cfg.aux = parse_aux(o.aux);
  const auto frontier = compute_frontier(loaded.law, *theorem, cfg);

  std::ostringstream csv;
  csv << "mu,r1_bits,r2_bits,witness_seed,active_constraint\n";
  for (const auto& p : frontier.points)
    csv << csv_number(p.mu) << ',' << csv_number(p.r1) << ',' << csv_number(p.r2) << ','
        << p.witness_seed << ',' << p.active << '\n';
  write_text(o.out, csv.str(), out);

  if (!o.out.empty()) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ordered_json m;
    m["tool"] = "cicpc";
    m["version"] = kToolVersion;
    m["channel_file"] = o.channel;
    m["channel_sha256"] = loaded.sha256;
    m["command"] = args;
    m["theorem"] = to_string(*theorem);
    m["config"] = config_json(cfg, frontier.meta.aux);
    m["mu_grid"] = frontier.meta.mu_grid;
    m["points"] = frontier.points.size();
    m["threads"] = cfg.threads;
    m["wall_time_seconds"] = wall;
    const auto report = classify(loaded.law);
    m["verdicts"] = {{"semideterministic", report.semideterministic},
                     {"degraded", report.degraded}};
    write_text(o.out + ".manifest.json", m.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto loaded = read_channel(o.channel);
  SearchConfig cfg = o.cfg;
  if (!o.aux.empty()) cfg.aux = parse_aux(o.aux);
  ordered_json j;
  j["condition"] = o.condition;
  if (o.condition == "more-capable") {
    const auto v = check_more_capable(loaded.law, cfg);
    j["status"] = to_string(v.status);
    j["margin_bits"] = v.margin;
    j["witness_seed"] = v.witness_seed;
    j["witness"] = factor_json(v.witness);
    j["budget"] = {{"restarts", v.restarts},
                   {"local_steps", cfg.local_steps},
                   {"samples_used", v.samples_used},
                   {"card_v", v.card_v},
                   {"seed", cfg.seed}};
  } else {
    const auto [x2, vgap] = check_high_gain(loaded.law, cfg);
    const bool violated =
        x2.status == VerdictStatus::Violated || vgap.status == VerdictStatus::Violated;
    j["status"] = violated ? "violated" : "satisfied";
    j["verdicts"] = {verdict_json(x2, "I(X2;Y1|Xr1)-I(X2,Xr1;Y2)"),
                     verdict_json(vgap, "I(V;Y1|X2,Xr1)-I(V;Y2|X2,Xr1)")};
    j["budget"] = {{"local_steps", cfg.local_steps}, {"seed", cfg.seed}};
  }
  j["channel_sha256"] = loaded.sha256;
  write_text(o.out, j.dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate regions of cognitive interference channels with partially cooperating "
               "destinations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  o.cfg.threads = threads_from_env();

  auto* classify_cmd = app.add_subcommand("classify", "Detect semideterministic / degraded structure");
  classify_cmd->add_option("channel", o.channel, "Channel JSON file")->required();
  classify_cmd->add_option("--out", o.out, "Write the JSON document here instead of stdout");

  auto* frontier_cmd = app.add_subcommand("frontier", "Compute the Pareto frontier of a region");
  frontier_cmd->add_option("channel", o.channel, "Channel JSON file")->required();
  frontier_cmd->add_option("--theorem", o.theorem, "t1 outer, t2 inner, t3 degraded, t4 semideterministic")
      ->check(CLI::IsMember({"t1", "t2", "t3", "t4"}));
  frontier_cmd->add_option("--mu-grid", o.cfg.mu_grid_size, "Number of scalarization weights")
      ->check(CLI::Range(2, 100000));
  frontier_cmd->add_option("--restarts", o.cfg.restarts)->check(CLI::PositiveNumber);
  frontier_cmd->add_option("--local-steps", o.cfg.local_steps)->check(CLI::PositiveNumber);
  frontier_cmd->add_option("--seed", o.cfg.seed);
  frontier_cmd->add_option("--aux-cards", o.aux, "Auxiliary cardinalities u,v,t");
  frontier_cmd->add_flag("--hull", o.cfg.hull, "Replace the frontier by its upper concave envelope");
  frontier_cmd->add_option("--out", o.out, "CSV output; a .manifest.json sidecar is written next to it");

  auto* check_cmd = app.add_subcommand("check", "Search for violations of a channel condition");
  check_cmd->add_option("channel", o.channel, "Channel JSON file")->required();
  check_cmd->add_option("--condition", o.condition)
      ->check(CLI::IsMember({"more-capable", "high-gain"}));
  check_cmd->add_option("--restarts", o.cfg.restarts)->check(CLI::PositiveNumber);
  check_cmd->add_option("--local-steps", o.cfg.local_steps)->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", o.cfg.seed);
  check_cmd->add_option("--aux-cards", o.aux, "Auxiliary cardinalities u,v,t");
  check_cmd->add_option("--out", o.out, "Write the JSON document here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*frontier_cmd) return cmd_frontier(o, args, out);
    if (*check_cmd) return cmd_check(o, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const MalformedChannel& e) {
    err << "error: malformed channel file: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const InvalidChannel& e) {
    err << "error: invalid channel: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ClassMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitClassMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cicpc
