#include "ucq/channel_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ucq {

namespace {

using nlohmann::json;

void validate_state(const Mat& m, int letter1) {
  std::ostringstream who;
  who << "output state for letter " << letter1;
  if (m.rows() != m.cols())
    throw ChannelError(who.str() + " is not square");
  if (max_abs(m - m.adjoint()) > 1e-8)
    throw ChannelError(who.str() + " is not Hermitian within 1e-8");
  if (std::abs(m.trace().real() - 1.0) > 1e-8 || std::abs(m.trace().imag()) > 1e-8)
    throw ChannelError(who.str() + " does not have unit trace within 1e-8");
  if (min_eig(0.5 * (m + m.adjoint())) < -1e-8)
    throw ChannelError(who.str() + " is not positive semidefinite within 1e-8");
}

Mat parse_matrix(const json& jm, int letter1) {
  std::ostringstream who;
  who << "output state for letter " << letter1;
  if (!jm.is_array() || jm.empty())
    throw ChannelError(who.str() + ": matrix must be a nonempty array of rows");
  const size_t d = jm.size();
  Mat m(d, d);
  for (size_t r = 0; r < d; ++r) {
    const json& row = jm.at(r);
    if (!row.is_array() || row.size() != d)
      throw ChannelError(who.str() + ": matrix is not square");
    for (size_t c = 0; c < d; ++c) {
      const json& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number())
        throw ChannelError(who.str() + ": entries must be [re, im] pairs");
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json dump_matrix(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ChannelSpec load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ChannelError("cannot open channel file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ChannelError(std::string("channel file is not valid JSON: ") + e.what());
  }

  ChannelSpec spec;
  try {
    spec.k = j.at("k").get<int>();
    spec.p = j.at("p").get<std::vector<double>>();
    spec.bipartite = j.value("bipartite", false);
    if (spec.bipartite) {
      spec.d_B = j.at("d_B").get<int>();
      spec.d_E = j.at("d_E").get<int>();
    }
    const json& outs = j.at("outputs");
    if (!outs.is_array() || static_cast<int>(outs.size()) != spec.k)
      throw ChannelError("outputs must list one matrix per letter");
    for (int x = 0; x < spec.k; ++x)
      spec.outputs.push_back(parse_matrix(outs.at(x), x + 1));
  } catch (const ChannelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ChannelError(std::string("malformed channel file: ") + e.what());
  }

  if (spec.k < 1) throw ChannelError("alphabet size k must be >= 1");
  if (static_cast<int>(spec.p.size()) != spec.k)
    throw ChannelError("p must have one entry per letter");
  double psum = 0.0;
  for (double v : spec.p) {
    if (v < -1e-15) throw ChannelError("p has a negative entry");
    psum += v;
  }
  if (std::abs(psum - 1.0) > 1e-9)
    throw ChannelError("p does not sum to 1 within 1e-9");

  const Eigen::Index d = spec.outputs.front().rows();
  for (int x = 0; x < spec.k; ++x) {
    if (spec.outputs[x].rows() != d)
      throw ChannelError("output matrices have mixed dimensions");
    validate_state(spec.outputs[x], x + 1);
  }
  if (spec.bipartite && d != static_cast<Eigen::Index>(spec.d_B) * spec.d_E)
    throw ChannelError("bipartite outputs must have dimension d_B * d_E");
  return spec;
}

void save_channel(const ChannelSpec& spec, const std::string& path) {
  json j;
  j["k"] = spec.k;
  j["p"] = spec.p;
  j["bipartite"] = spec.bipartite;
  if (spec.bipartite) {
    j["d_B"] = spec.d_B;
    j["d_E"] = spec.d_E;
  }
  json outs = json::array();
  for (const Mat& m : spec.outputs) outs.push_back(dump_matrix(m));
  j["outputs"] = std::move(outs);
  std::ofstream out(path);
  if (!out) throw ChannelError("cannot write channel file: " + path);
  out << j.dump(1) << "\n";
}

CqChannel to_cq(const ChannelSpec& spec) {
  std::vector<DensityOp> outs;
  outs.reserve(spec.k);
  for (const Mat& m : spec.outputs)
    outs.push_back(DensityOp::trusted(0.5 * (m + m.adjoint())));
  return CqChannel(Alphabet{spec.k}, std::move(outs));
}

BipartiteCqChannel to_bipartite(const ChannelSpec& spec) {
  if (!spec.bipartite)
    throw ChannelError("channel file is not bipartite (missing d_B/d_E)");
  std::vector<DensityOp> outs;
  outs.reserve(spec.k);
  for (const Mat& m : spec.outputs)
    outs.push_back(DensityOp::trusted(0.5 * (m + m.adjoint())));
  return BipartiteCqChannel(Alphabet{spec.k}, std::move(outs), spec.d_B, spec.d_E);
}

}  // namespace ucq
