#include "rgm/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rgm/error.hpp"

namespace rgm::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

void write_rank_csv(std::ostream& out, const RankVector& rv, const DirectedGraph& g) {
  const auto rank = rank_positions(rv.order);
  out << "index,label,p,rank\n";
  for (std::size_t i = 0; i < rv.p.size(); ++i)
    out << i << ',' << csv_field(g.label(static_cast<NodeId>(i))) << ',' << format_double(rv.p[i]) << ','
        << rank[i] << '\n';
}

void write_subset_ranks_csv(std::ostream& out, const NodeSubset& subset, const RankVector& pagerank,
                            const RankVector& cheirank) {
  const auto k = rank_positions(pagerank.order);
  const auto ks = rank_positions(cheirank.order);
  const auto lk = local_ranks(pagerank.order, subset);
  const auto lks = local_ranks(cheirank.order, subset);
  out << "label,index,K,K_star,local_K,local_K_star\n";
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const auto i = subset.indices[a];
    out << csv_field(subset.labels[a]) << ',' << i << ',' << k[i] << ',' << ks[i] << ',' << lk[a] << ',' << lks[a]
        << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& m, const std::vector<std::string>& labels) {
  if (labels.size() != m.rows() || !m.square()) throw InvalidArgument("matrix/label size mismatch");
  out << "label";
  for (const auto& l : labels) out << ',' << csv_field(l);
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv_field(labels[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << format_double(m(r, c));
    out << '\n';
  }
}

LabeledMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
  auto header = parse_csv_line(line);
  if (header.empty() || header.front() != "label") throw ParseError("matrix header must start with 'label'", 1);
  LabeledMatrix lm;
  lm.labels.assign(header.begin() + 1, header.end());
  const auto n = lm.labels.size();
  lm.m = DenseMatrix(n, n);
  std::size_t row = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = parse_csv_line(line);
    if (row >= n) throw ParseError("too many matrix rows", lineno);
    if (cells.size() != n + 1) throw ParseError("wrong number of matrix columns", lineno);
    if (cells[0] != lm.labels[row]) throw ParseError("row label '" + cells[0] + "' does not match header", lineno);
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = cells[c + 1];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) throw ParseError("bad number '" + cell + "'", lineno);
      lm.m(row, c) = v;
    }
    ++row;
  }
  if (row != n) throw ParseError("matrix has " + std::to_string(row) + " rows, expected " + std::to_string(n), 0);
  return lm;
}

nlohmann::ordered_json reduced_manifest(const ReducedMatrices& m, const std::string& edition) {
  nlohmann::ordered_json j;
  j["lambda_c"] = m.lambda_c;
  j["weights"] = {{"W_rr", m.weights.rr}, {"W_pr", m.weights.pr}, {"W_qr", m.weights.qr}};
  j["neg_weight"] = m.neg_weight;
  j["series_terms"] = m.series_terms;
  j["series_residual"] = m.series_residual;
  j["alpha"] = m.alpha;
  j["N"] = m.n;
  j["N_r"] = m.subset.size();
  j["clamped_entries"] = m.clamped_entries;
  j["edition"] = edition;
  j["labels"] = m.subset.labels;
  return j;
}

namespace {

template <class F>
void write_with(const fs::path& path, F body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  body(out);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

LabeledMatrix read_matrix_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return read_matrix_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace

void write_file(const fs::path& path, const std::string& text) {
  write_with(path, [&](std::ostream& out) { out << text; });
}

void write_reduced_dir(const fs::path& dir, const ReducedMatrices& m, const std::string& edition) {
  fs::create_directories(dir);
  const auto& labels = m.subset.labels;
  const std::pair<const char*, const DenseMatrix*> parts[] = {
      {"g_r.csv", &m.g_r},         {"g_rr.csv", &m.g_rr},           {"g_pr.csv", &m.g_pr},
      {"g_qr.csv", &m.g_qr},       {"g_qr_diag.csv", &m.g_qr_diag}, {"g_qr_ndiag.csv", &m.g_qr_ndiag},
  };
  for (const auto& [name, mat] : parts)
    write_with(dir / name, [&](std::ostream& out) { write_matrix_csv(out, *mat, labels); });
  write_file(dir / "manifest.json", reduced_manifest(m, edition).dump(2) + "\n");
}

LoadedReduced read_reduced_dir(const fs::path& dir) {
  LoadedReduced out;
  {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw Error("no manifest.json in '" + dir.string() + "'");
    try {
      out.manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("manifest.json: ") + e.what(), 0);
    }
  }
  out.edition = out.manifest.value("edition", std::string{});
  if (out.edition.empty()) out.edition = dir.filename().string();
  auto g_r = read_matrix_file(dir / "g_r.csv");
  out.labels = g_r.labels;
  out.g_r = std::move(g_r.m);
  auto same = [&](LabeledMatrix lm, const char* name) {
    if (lm.labels != out.labels) throw ParseError(std::string(name) + " labels differ from g_r.csv", 0);
    return std::move(lm.m);
  };
  out.g_rr = same(read_matrix_file(dir / "g_rr.csv"), "g_rr.csv");
  out.g_qr = same(read_matrix_file(dir / "g_qr.csv"), "g_qr.csv");
  out.g_qr_ndiag = same(read_matrix_file(dir / "g_qr_ndiag.csv"), "g_qr_ndiag.csv");
  return out;
}

void write_sensitivity_csv(std::ostream& out, const SensitivityReport& rep) {
  out << "label,d,p_base,p_perturbed\n";
  for (std::size_t a = 0; a < rep.d.size(); ++a)
    out << csv_field(rep.labels[a]) << ',' << format_double(rep.d[a]) << ',' << format_double(rep.p_base[a]) << ','
        << format_double(rep.p_perturbed[a]) << '\n';
}

nlohmann::ordered_json sensitivity_metadata(const SensitivityReport& rep) {
  nlohmann::ordered_json j;
  j["i_label"] = rep.i_label();
  j["j_label"] = rep.j_label();
  j["delta"] = rep.perturbation.delta;
  j["edition"] = rep.edition;
  j["kind"] = rep.kind == RankKind::pagerank ? "pagerank" : "cheirank";
  j["noop"] = rep.noop;
  return j;
}

void write_vector_csv(std::ostream& out, const std::vector<std::string>& labels, const std::vector<double>& v,
                      const std::string& column) {
  out << "label," << column << '\n';
  for (std::size_t a = 0; a < v.size(); ++a) out << csv_field(labels.at(a)) << ',' << format_double(v[a]) << '\n';
}

void write_imbalance_csv(std::ostream& out, const ImbalanceMatrix& f, const std::vector<std::string>& labels) {
  write_matrix_csv(out, f.f, labels);
}

void write_friend_edges_csv(std::ostream& out, const FriendNetwork& net) {
  out << "src_label,dst_label,value,kind\n";
  for (const auto& e : net.primary_edges)
    out << csv_field(net.labels[e.src]) << ',' << csv_field(net.labels[e.dst]) << ',' << format_double(e.value)
        << ",primary\n";
  for (const auto& e : net.closure_edges)
    out << csv_field(net.labels[e.src]) << ',' << csv_field(net.labels[e.dst]) << ',' << format_double(e.value)
        << ",closure\n";
}

}  // namespace rgm::io
