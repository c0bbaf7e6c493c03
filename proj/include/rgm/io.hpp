#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgm/dense.hpp"
#include "rgm/friends.hpp"
#include "rgm/google.hpp"
#include "rgm/reduced.hpp"
#include "rgm/sensitivity.hpp"

namespace rgm::io {

/// 17 significant digits, scientific notation ("%.16e").
std::string format_double(double v);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);
std::vector<std::string> parse_csv_line(const std::string& line);

/// "index,label,p,rank" with rank 1-based, one row per node in index order.
void write_rank_csv(std::ostream& out, const RankVector& rv, const DirectedGraph& g);

/// "label,index,K,K_star,local_K,local_K_star" in subset order.
void write_subset_ranks_csv(std::ostream& out, const NodeSubset& subset, const RankVector& pagerank,
                            const RankVector& cheirank);

/// Square matrix with label header row and label first column.
void write_matrix_csv(std::ostream& out, const DenseMatrix& m, const std::vector<std::string>& labels);

struct LabeledMatrix {
  std::vector<std::string> labels;
  DenseMatrix m;
};
LabeledMatrix read_matrix_csv(std::istream& in);

nlohmann::ordered_json reduced_manifest(const ReducedMatrices& m, const std::string& edition);

/// One CSV per component plus manifest.json.
void write_reduced_dir(const std::filesystem::path& dir, const ReducedMatrices& m, const std::string& edition);

struct LoadedReduced {
  std::vector<std::string> labels;
  DenseMatrix g_r;
  DenseMatrix g_rr;
  DenseMatrix g_qr;
  DenseMatrix g_qr_ndiag;
  nlohmann::json manifest;
  std::string edition;
};
LoadedReduced read_reduced_dir(const std::filesystem::path& dir);

/// "label,d,p_base,p_perturbed"
void write_sensitivity_csv(std::ostream& out, const SensitivityReport& rep);
nlohmann::ordered_json sensitivity_metadata(const SensitivityReport& rep);

/// "label,d"
void write_vector_csv(std::ostream& out, const std::vector<std::string>& labels, const std::vector<double>& v,
                      const std::string& column);

/// Full F matrix with label headers; missing pairs are written as "nan".
void write_imbalance_csv(std::ostream& out, const ImbalanceMatrix& f, const std::vector<std::string>& labels);

/// "src_label,dst_label,value,kind", primary edges first then closure edges,
/// each in discovery order.
void write_friend_edges_csv(std::ostream& out, const FriendNetwork& net);

/// Writes text to a file, throwing rgm::Error on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rgm::io
