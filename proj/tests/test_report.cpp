#include <cmath>

#include <gtest/gtest.h>

#include "radlyap/report.hpp"

using namespace radlyap;

TEST(Report, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) EXPECT_EQ(std::strtod(report::number(x).c_str(), nullptr), x);
  EXPECT_EQ(report::number(INFINITY), "inf");
  EXPECT_EQ(report::number(-INFINITY), "-inf");
  EXPECT_EQ(report::number(NAN), "nan");
  EXPECT_EQ(report::real(INFINITY), "inf");
  EXPECT_EQ(report::real(2.5), 2.5);
}

TEST(Report, EnvelopeCarriesVersionAndConfig) {
  const auto doc = report::envelope("eigen", {{"dim", 3}}, {{"x", 1}});
  EXPECT_EQ(doc["schema"], report::kSchema);
  EXPECT_EQ(doc["version"], std::string(kVersion));
  EXPECT_EQ(doc["config"]["dim"], 3);
  EXPECT_EQ(doc["result"]["x"], 1);
}

TEST(Report, CsvHasConfigLineThenHeader) {
  report::Table t;
  t.header = {"a", "b"};
  t.add({"1", "x"});
  const std::string csv = report::to_csv(t, {{"seed", 7}});
  EXPECT_EQ(csv, "# radlyap 0.1.0 config={\"seed\":7}\na,b\n1,x\n");
  EXPECT_THROW(t.add({"1"}), Error);
}

TEST(Report, TableJsonRestoresNumbers) {
  report::Table t;
  t.header = {"p", "kind", "limit"};
  t.add({"1.5", "Exact", ""});
  const auto j = report::to_json(t);
  EXPECT_EQ(j[0]["p"], 1.5);
  EXPECT_EQ(j[0]["kind"], "Exact");
  EXPECT_EQ(j[0]["limit"], "");
}

TEST(Report, EigenZerosAreLabelledFromTheOutside) {
  const EigenPair e = neumann_radial_eigen(3, 2);
  const auto j = report::eigen_json(e);
  EXPECT_EQ(j["zeros_labelled"]["r_1"], e.zeros.back());
  EXPECT_EQ(j["zeros_labelled"]["r_2"], e.zeros.front());
  EXPECT_EQ(j["boundary_condition"], "neumann");
}

TEST(Report, TrichotomyTableLeavesMissingCellsEmpty) {
  TrichotomyRow r;
  r.p = INFINITY;
  r.regime = "supercritical";
  r.kind = "Exact";
  r.classification = "positive-evidence";
  const auto t = report::trichotomy_table({r});
  EXPECT_EQ(t.rows[0][0], "inf");
  EXPECT_EQ(t.rows[0][4], "");
}

TEST(Report, PlotFileHasTwoColumns) {
  EXPECT_EQ(report::plot_csv("r", "u", {{0.5, 1.0}}), "r,u\n0.5,1\n");
}
