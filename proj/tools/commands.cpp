#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rgm/error.hpp"
#include "rgm/friends.hpp"
#include "rgm/google.hpp"
#include "rgm/graph.hpp"
#include "rgm/io.hpp"
#include "rgm/reduced.hpp"
#include "rgm/sensitivity.hpp"

namespace rgm::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string graph;
  std::string labels;
  double alpha = 0.85;
  std::string subset;
  std::optional<double> tol;
  double delta = 0.03;
  std::string out;
  std::string edition;
  std::string reduced;
  std::vector<std::string> editions;
  std::string from;
  std::string to;
  bool two_way = false;
  std::string matrix = "gr";
  std::string leaders;
  std::size_t k = 4;
  std::string mode = "friends";
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// A path to an existing file is read one label per line; anything else is a
// comma-separated label list.
std::vector<std::string> subset_labels(const std::string& arg) {
  if (arg.empty()) throw InvalidArgument("--subset is required");
  std::error_code ec;
  if (!fs::is_regular_file(arg, ec)) return split_list(arg);
  std::ifstream in(arg);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

DirectedGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw InvalidArgument("--graph is required");
  std::ifstream edges(cfg.graph);
  if (!edges) throw InvalidArgument("cannot open graph file '" + cfg.graph + "'");
  if (cfg.labels.empty()) return load_edge_list(edges);
  std::ifstream labels(cfg.labels);
  if (!labels) throw InvalidArgument("cannot open label file '" + cfg.labels + "'");
  return load_edge_list(edges, &labels);
}

fs::path out_dir(const RunConfig& cfg) {
  if (cfg.out.empty()) throw InvalidArgument("--out is required");
  fs::create_directories(cfg.out);
  return cfg.out;
}

template <class F>
void write(const fs::path& path, F body) {
  std::ostringstream s;
  body(s);
  io::write_file(path, s.str());
}

io::LoadedReduced reduced_from_graph(const RunConfig& cfg) {
  const auto g = load_graph(cfg);
  const auto subset = resolve_subset(g, subset_labels(cfg.subset));
  ReduceOptions opts;
  if (cfg.tol) opts.series_tol = *cfg.tol;
  auto m = reduce(GoogleMatrix(g, cfg.alpha), subset, opts);
  io::LoadedReduced out;
  out.labels = m.subset.labels;
  out.g_r = m.g_r;
  out.g_rr = m.g_rr;
  out.g_qr = m.g_qr;
  out.g_qr_ndiag = m.g_qr_ndiag;
  out.manifest = nlohmann::json::parse(io::reduced_manifest(m, cfg.edition).dump());
  out.edition = cfg.edition;
  return out;
}

// Reduced matrices from --reduced DIR, or computed from --graph/--subset.
io::LoadedReduced reduced_input(const RunConfig& cfg) {
  if (!cfg.reduced.empty()) {
    auto r = io::read_reduced_dir(cfg.reduced);
    if (!cfg.edition.empty()) r.edition = cfg.edition;
    return r;
  }
  return reduced_from_graph(cfg);
}

std::size_t label_position(const std::vector<std::string>& labels, const std::string& label) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return k;
  throw InvalidArgument("unknown label '" + label + "'");
}

SensitivityOptions sens_opts(const RunConfig& cfg) {
  SensitivityOptions o;
  if (cfg.tol) o.tol = *cfg.tol;
  return o;
}

int cmd_pagerank(const RunConfig& cfg, std::ostream& out) {
  const auto g = load_graph(cfg);
  PowerOptions opts;
  if (cfg.tol) opts.tol = *cfg.tol;
  const auto pr = pagerank(GoogleMatrix(g, cfg.alpha), opts);
  const auto cr = cheirank(g, cfg.alpha, opts);
  const auto dir = out_dir(cfg);
  write(dir / "pagerank.csv", [&](std::ostream& s) { io::write_rank_csv(s, pr, g); });
  write(dir / "cheirank.csv", [&](std::ostream& s) { io::write_rank_csv(s, cr, g); });
  if (!cfg.subset.empty()) {
    const auto subset = resolve_subset(g, subset_labels(cfg.subset));
    write(dir / "subset_ranks.csv", [&](std::ostream& s) { io::write_subset_ranks_csv(s, subset, pr, cr); });
  }
  out << "pagerank: " << pr.iterations << " iterations, residual " << io::format_double(pr.residual) << '\n';
  out << "cheirank: " << cr.iterations << " iterations, residual " << io::format_double(cr.residual) << '\n';
  return kOk;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  const auto g = load_graph(cfg);
  const auto subset = resolve_subset(g, subset_labels(cfg.subset));
  ReduceOptions opts;
  if (cfg.tol) opts.series_tol = *cfg.tol;
  const auto m = reduce(GoogleMatrix(g, cfg.alpha), subset, opts);
  io::write_reduced_dir(out_dir(cfg), m, cfg.edition);
  out << "W_rr " << io::format_double(m.weights.rr) << '\n'
      << "W_pr " << io::format_double(m.weights.pr) << '\n'
      << "W_qr " << io::format_double(m.weights.qr) << '\n'
      << "lambda_c " << io::format_double(m.lambda_c) << '\n';
  return kOk;
}

void label_report(SensitivityReport& rep, const io::LoadedReduced& r) {
  rep.labels = r.labels;
  rep.edition = r.edition;
}

int cmd_sensitivity(const RunConfig& cfg, std::ostream& err) {
  if (cfg.from.empty() || cfg.to.empty()) throw InvalidArgument("--from and --to are required");
  const auto dir = out_dir(cfg);
  const auto opts = sens_opts(cfg);

  std::vector<io::LoadedReduced> inputs;
  if (!cfg.editions.empty()) {
    for (const auto& d : cfg.editions) inputs.push_back(io::read_reduced_dir(d));
  } else {
    inputs.push_back(reduced_input(cfg));
  }

  std::vector<SensitivityReport> page, chei;
  std::vector<std::vector<double>> two;
  for (const auto& r : inputs) {
    const Perturbation p{label_position(r.labels, cfg.to), label_position(r.labels, cfg.from), cfg.delta};
    auto rep = sensitivity(r.g_r, p, opts);
    auto crep = cheirank_sensitivity(r.g_r, p, opts);
    label_report(rep, r);
    label_report(crep, r);
    if (rep.noop)
      err << "warning: link " << cfg.from << " -> " << cfg.to << " is zero in edition '" << r.edition
          << "'; perturbation is a no-op\n";
    if (cfg.two_way) {
      // Reorder to the first edition's labels so the mean lines up.
      const auto d = two_way(r.g_r, p.j, p.i, cfg.delta, opts);
      std::vector<double> aligned(d.size());
      for (std::size_t k = 0; k < d.size(); ++k) aligned[k] = d[label_position(r.labels, inputs.front().labels[k])];
      two.push_back(std::move(aligned));
    }
    page.push_back(std::move(rep));
    chei.push_back(std::move(crep));
  }

  if (cfg.editions.empty()) {
    write(dir / "sensitivity.csv", [&](std::ostream& s) { io::write_sensitivity_csv(s, page[0]); });
    io::write_file(dir / "sensitivity.json", io::sensitivity_metadata(page[0]).dump(2) + "\n");
    write(dir / "cheirank_sensitivity.csv", [&](std::ostream& s) { io::write_sensitivity_csv(s, chei[0]); });
    io::write_file(dir / "cheirank_sensitivity.json", io::sensitivity_metadata(chei[0]).dump(2) + "\n");
    if (cfg.two_way)
      write(dir / "two_way.csv", [&](std::ostream& s) { io::write_vector_csv(s, inputs[0].labels, two[0], "d"); });
    return kOk;
  }

  const auto mean = average_reports(page);
  const auto chei_mean = average_reports(chei);
  write(dir / "sensitivity_mean.csv", [&](std::ostream& s) { io::write_vector_csv(s, mean.labels, mean.d, "d"); });
  write(dir / "cheirank_sensitivity_mean.csv",
        [&](std::ostream& s) { io::write_vector_csv(s, chei_mean.labels, chei_mean.d, "d"); });
  nlohmann::ordered_json meta;
  meta["i_label"] = mean.i_label;
  meta["j_label"] = mean.j_label;
  meta["delta"] = mean.delta;
  meta["editions"] = mean.editions;
  io::write_file(dir / "sensitivity_mean.json", meta.dump(2) + "\n");
  if (cfg.two_way) {
    std::vector<double> avg(two.front().size(), 0.0);
    for (const auto& d : two)
      for (std::size_t k = 0; k < d.size(); ++k) avg[k] += d[k];
    for (double& v : avg) v /= static_cast<double>(two.size());
    write(dir / "two_way_mean.csv", [&](std::ostream& s) { io::write_vector_csv(s, mean.labels, avg, "d"); });
  }
  return kOk;
}

int cmd_imbalance(const RunConfig& cfg, std::ostream& err) {
  const auto r = reduced_input(cfg);
  const auto f = imbalance_matrix(r.g_r, cfg.delta, sens_opts(cfg));
  const auto dir = out_dir(cfg);
  write(dir / "imbalance.csv", [&](std::ostream& s) { io::write_imbalance_csv(s, f, r.labels); });
  for (const auto& [a, b] : f.missing)
    err << "warning: pair (" << r.labels[a] << ", " << r.labels[b] << ") failed and is missing\n";
  return kOk;
}

int cmd_friends(const RunConfig& cfg) {
  const auto r = reduced_input(cfg);
  const DenseMatrix* m = nullptr;
  if (cfg.matrix == "gr")
    m = &r.g_r;
  else if (cfg.matrix == "gqrnd")
    m = &r.g_qr_ndiag;
  else
    throw InvalidArgument("--matrix must be 'gr' or 'gqrnd'");
  FriendMode mode;
  if (cfg.mode == "friends")
    mode = FriendMode::friends;
  else if (cfg.mode == "followers")
    mode = FriendMode::followers;
  else
    throw InvalidArgument("--mode must be 'friends' or 'followers'");

  std::vector<std::size_t> leaders;
  for (const auto& l : split_list(cfg.leaders)) leaders.push_back(label_position(r.labels, l));
  if (leaders.empty()) throw InvalidArgument("--leaders is required");
  const auto weights = reduced_pagerank(r.g_r);
  const auto net = build_network(*m, leaders, cfg.k, mode, weights, r.labels);
  const auto dir = out_dir(cfg);
  io::write_file(dir / "friends.dot", export_dot(net));
  write(dir / "friends_edges.csv", [&](std::ostream& s) { io::write_friend_edges_csv(s, net); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Reduced Google matrix analysis of directed graphs", "rgm"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph, "Edge list file ('src dst' per line)");
    sub->add_option("--labels", cfg.labels, "Label map file ('index<TAB>label' per line)");
    sub->add_option("--alpha", cfg.alpha, "Damping factor")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--subset", cfg.subset, "Comma-separated labels or a file with one label per line");
    sub->add_option("--tol", cfg.tol, "Convergence tolerance");
    sub->add_option("--out", cfg.out, "Output directory")->required();
    sub->add_option("--edition", cfg.edition, "Edition tag recorded in outputs");
  };
  auto add_reduced = [&](CLI::App* sub) {
    add_graph(sub);
    sub->add_option("--reduced", cfg.reduced, "Directory written by 'reduce'");
    sub->add_option("--delta", cfg.delta, "Relative link boost");
  };

  auto* pr = app.add_subcommand("pagerank", "PageRank and CheiRank of the full graph");
  add_graph(pr);
  auto* rd = app.add_subcommand("reduce", "Reduced Google matrix and its components");
  add_graph(rd);
  auto* se = app.add_subcommand("sensitivity", "Sensitivity of the reduced PageRank to one link");
  add_reduced(se);
  se->add_option("--from", cfg.from, "Source label j of the link j -> i");
  se->add_option("--to", cfg.to, "Destination label i of the link j -> i");
  se->add_option("--editions", cfg.editions, "Reduced directories to average over");
  se->add_flag("--two-way", cfg.two_way, "Also write the two-way sensitivity");
  auto* im = app.add_subcommand("imbalance", "Relationship imbalance matrix F");
  add_reduced(im);
  auto* fr = app.add_subcommand("friends", "Top-k friends or followers network");
  add_reduced(fr);
  fr->add_option("--matrix", cfg.matrix, "gr or gqrnd");
  fr->add_option("--leaders", cfg.leaders, "Comma-separated leader labels");
  fr->add_option("--k", cfg.k, "Edges per node");
  fr->add_option("--mode", cfg.mode, "friends or followers");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (pr->parsed()) return cmd_pagerank(cfg, out);
    if (rd->parsed()) return cmd_reduce(cfg, out);
    if (se->parsed()) return cmd_sensitivity(cfg, err);
    if (im->parsed()) return cmd_imbalance(cfg, err);
    if (fr->parsed()) return cmd_friends(cfg);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rgm::cli
