#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "cvgme/json_io.hpp"
#include "cvgme/reference_data.hpp"
#include "test_util.hpp"

using namespace cvgme;
using io::json;

namespace {

// Dump, reparse, rebuild, dump again: text and values must survive unchanged.
template <class T, class F>
void round_trip(const T& obj, F from) {
  const json a = io::to_json(obj);
  const std::string path =
      (std::filesystem::temp_directory_path() / ("cvgme_rt_" + std::to_string(::getpid()) + ".json")).string();
  io::write_file(path, a);
  const json b = io::to_json(from(io::read_file(path)));
  std::remove(path.c_str());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dump(), b.dump());
}

}  // namespace

TEST(Json, CovarianceRoundTrip) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 10; ++k) {
    const auto g = testutil::random_cm(1 + k % 4, rng);
    round_trip(g, io::cm_from_json);
    const auto back = io::cm_from_json(json::parse(io::to_json(g).dump()));
    EXPECT_EQ(testutil::max_abs(back.matrix() - g.matrix()), 0.0);  // bit-exact
  }
  const json j = io::to_json(CovarianceMatrix::vacuum(2));
  EXPECT_EQ(j["ordering"], "xpxp");
  EXPECT_EQ(j["n_modes"], 2);
}

TEST(Json, TreeWitnessCircuitRoundTrip) {
  round_trip(tree_preset("tshape4"), io::tree_from_json);
  EXPECT_EQ(io::to_json(tree_preset("chain3"))["edges"], json::parse("[[1,2],[2,3]]"));
  std::mt19937_64 rng(52);
  std::normal_distribution<double> nd;
  const Matrix z = Matrix::NullaryExpr(6, 6, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
  const Witness w = make_witness(3, z, {{0, 2}});
  round_trip(w, io::witness_from_json);
  EXPECT_EQ(io::to_json(w)["blind_blocks"], json::parse("[[1,3]]"));
  CircuitSpec c{3, (Vector(3) << 6.835, 1.0, 1.0).finished(),
                {CircuitElement::squeezer(0, 0.396), CircuitElement::squeezer(1, 1.0 / 0.851),
                 CircuitElement::beam_splitter({BsVariant::U_AB, {0, 1}, 0.555}),
                 CircuitElement::sign(2),
                 CircuitElement::displace(Vector::Constant(3, 0.2), Vector::Constant(3, -0.5), 2.9)}};
  round_trip(c, io::circuit_from_json);
  const CircuitSpec back = io::circuit_from_json(io::to_json(c));
  EXPECT_EQ(testutil::max_abs(simulate(back).matrix() - simulate(c).matrix()), 0.0);
}

TEST(Json, RejectsMalformedInput) {
  json cm = io::to_json(CovarianceMatrix::vacuum(2));
  cm["ordering"] = "xxpp";
  EXPECT_THROW(io::cm_from_json(cm), std::invalid_argument);
  cm = io::to_json(CovarianceMatrix::vacuum(2));
  cm["n_modes"] = 3;
  EXPECT_THROW(io::cm_from_json(cm), std::invalid_argument);
  cm.erase("matrix");
  EXPECT_THROW(io::cm_from_json(cm), std::invalid_argument);
  EXPECT_THROW(io::tree_from_json(json::parse(R"({"n_modes":3,"edges":[[0,1]]})")),
               std::invalid_argument);
  json w = io::to_json(make_witness(3, Matrix::Ones(6, 6), {{0, 2}}));
  w["matrix"][0][4] = 1.0;  // declared blind but nonzero
  EXPECT_THROW(io::witness_from_json(w), std::invalid_argument);
  EXPECT_THROW(io::circuit_from_json(json::parse(R"({"n_modes":1,"elements":[{"type":"laser"}]})")),
               std::invalid_argument);
  EXPECT_THROW(io::read_file("/nonexistent/cvgme.json"), std::runtime_error);
}

TEST(Json, TraceSerializes) {
  SearchConfig cfg;
  cfg.iterations = 2;
  const auto t = search(cfg);
  const json j = io::to_json(t);
  EXPECT_EQ(j["iterations"].size(), t.records.size());
  EXPECT_EQ(j["seed"], cfg.seed);
  if (t.completed) EXPECT_EQ(j["final"]["value"].get<double>(), t.value);
}

TEST(ReferenceData, ChecksumGuardsTranscription) {
  EXPECT_EQ(reference::checksum(), 4576057719464140963ull);
}

TEST(ReferenceData, MatricesWellFormed) {
  const auto all = reference::all_matrices();
  EXPECT_EQ(all.size(), 10u);
  for (const auto& m : all) {
    EXPECT_EQ(m.matrix.rows(), 2 * m.n_modes) << m.name;
    EXPECT_EQ(testutil::max_abs(m.matrix - m.matrix.transpose()), 0.0) << m.name;
    EXPECT_EQ(reference::by_name(m.name).matrix, m.matrix);
  }
  EXPECT_THROW(reference::by_name("gamma5"), std::out_of_range);
  EXPECT_EQ(reference::ppt_gamma4_linear().size(), 6u);
}
