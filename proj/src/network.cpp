#include "mrfcut/network.hpp"

#include <algorithm>
#include <string>

namespace mrfcut {

void validate(const Network& net) {
  if (net.num_usual < 0) throw InputError("negative usual node count");
  const NodeId s = net.source();
  const NodeId t = net.sink();
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const Arc& a = net.arcs[k];
    const std::string where = "arc #" + std::to_string(k) + " (" + std::to_string(a.from) + "," +
                              std::to_string(a.to) + ")";
    if (a.from < 0 || a.from > t || a.to < 0 || a.to > t)
      throw InputError(where + ": node id out of range");
    if (a.from == a.to) throw InputError(where + ": self loop");
    if (a.to == s) throw InputError(where + ": arc enters the source");
    if (a.from == t) throw InputError(where + ": arc leaves the sink");
    if (a.cap < 0) throw InputError(where + ": negative capacity");
  }
}

GNetwork::GNetwork(std::int32_t num_usual, std::vector<Capacity> lambda,
                   std::vector<std::uint8_t> y, std::vector<BetaArc> beta_arcs, Capacity offset)
    : num_usual_(num_usual),
      lambda_(std::move(lambda)),
      y_(std::move(y)),
      offset_(offset) {
  if (num_usual_ < 0) throw InputError("negative usual node count");
  const auto n = static_cast<std::size_t>(num_usual_);
  if (lambda_.size() != n || y_.size() != n)
    throw InputError("lambda/y length differs from node count");
  if (offset_ < 0) throw InputError("negative offset");
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda_[i] < 0) throw InputError("negative lambda at node " + std::to_string(i));
    if (y_[i] > 1) throw InputError("terminal bit must be 0 or 1");
    if (y_[i]) source_total_ = checked_add(source_total_, lambda_[i]);
  }

  for (const BetaArc& a : beta_arcs) {
    if (a.from < 0 || a.from >= num_usual_ || a.to < 0 || a.to >= num_usual_)
      throw InputError("coupling arc references node out of range");
    if (a.from == a.to) throw InputError("coupling arc is a self loop");
    if (a.cap < 0) throw InputError("negative coupling capacity");
  }
  std::stable_sort(beta_arcs.begin(), beta_arcs.end(), [](const BetaArc& a, const BetaArc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  for (const BetaArc& a : beta_arcs) {
    if (a.cap == 0) continue;
    if (!beta_arcs_.empty() && beta_arcs_.back().from == a.from && beta_arcs_.back().to == a.to)
      beta_arcs_.back().cap = checked_add(beta_arcs_.back().cap, a.cap);
    else
      beta_arcs_.push_back(a);
  }

  out_first_.assign(n + 1, 0);
  in_first_.assign(n + 1, 0);
  for (const BetaArc& a : beta_arcs_) {
    ++out_first_[a.from + 1];
    ++in_first_[a.to + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_first_[i + 1] += out_first_[i];
    in_first_[i + 1] += in_first_[i];
  }
  out_.resize(beta_arcs_.size());
  in_.resize(beta_arcs_.size());
  std::vector<std::int32_t> in_fill(in_first_.begin(), in_first_.end() - 1);
  // beta_arcs_ is sorted by from, so out_ fills in order.
  for (std::size_t k = 0; k < beta_arcs_.size(); ++k) {
    const BetaArc& a = beta_arcs_[k];
    out_[k] = {a.to, a.cap};
    in_[in_fill[a.to]++] = {a.from, a.cap};
  }
}

Network GNetwork::to_network() const {
  Network net;
  net.num_usual = num_usual_;
  net.arcs.reserve(static_cast<std::size_t>(num_usual_) + beta_arcs_.size());
  for (NodeIndex i = 0; i < num_usual_; ++i) {
    if (lambda_[i] == 0) continue;
    if (y_[i])
      net.arcs.push_back({net.source(), i + 1, lambda_[i]});
    else
      net.arcs.push_back({i + 1, net.sink(), lambda_[i]});
  }
  for (const BetaArc& a : beta_arcs_) net.arcs.push_back({a.from + 1, a.to + 1, a.cap});
  return net;
}

GNetwork normalize_to_G(const Network& net) {
  validate(net);
  const auto n = static_cast<std::size_t>(net.num_usual);
  const NodeId s = net.source();
  const NodeId t = net.sink();
  std::vector<Capacity> from_source(n, 0);
  std::vector<Capacity> to_sink(n, 0);
  std::vector<BetaArc> couplings;
  Capacity offset = 0;
  for (const Arc& a : net.arcs) {
    if (a.from == s && a.to == t)
      offset = checked_add(offset, a.cap);
    else if (a.from == s)
      from_source[a.to - 1] = checked_add(from_source[a.to - 1], a.cap);
    else if (a.to == t)
      to_sink[a.from - 1] = checked_add(to_sink[a.from - 1], a.cap);
    else
      couplings.push_back({a.from - 1, a.to - 1, a.cap});
  }
  std::vector<Capacity> lambda(n, 0);
  std::vector<std::uint8_t> y(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Capacity common = std::min(from_source[i], to_sink[i]);
    offset = checked_add(offset, common);
    if (from_source[i] > to_sink[i]) {
      y[i] = 1;
      lambda[i] = from_source[i] - common;
    } else {
      lambda[i] = to_sink[i] - common;
    }
  }
  return GNetwork(net.num_usual, std::move(lambda), std::move(y), std::move(couplings), offset);
}

namespace {

void check_length(const GNetwork& g, std::span<const std::uint8_t> x) {
  if (x.size() != static_cast<std::size_t>(g.num_usual()))
    throw InputError("labeling length " + std::to_string(x.size()) + " differs from node count " +
                     std::to_string(g.num_usual()));
}

}  // namespace

Capacity cut_capacity(const GNetwork& g, std::span<const std::uint8_t> x) {
  check_length(g, x);
  Capacity total = g.offset();
  const auto lambda = g.lambda();
  const auto y = g.y();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) total = checked_add(total, lambda[i]);
  for (const BetaArc& a : g.beta_arcs())
    if (x[a.from] && !x[a.to]) total = checked_add(total, a.cap);
  return total;
}

std::int64_t energy_U(const GNetwork& g, std::span<const std::uint8_t> x) {
  check_length(g, x);
  std::int64_t total = 0;
  const auto lambda = g.lambda();
  const auto y = g.y();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    total = y[i] ? checked_sub(total, lambda[i]) : checked_add(total, lambda[i]);
  }
  for (const BetaArc& a : g.beta_arcs())
    if (x[a.from] && !x[a.to]) total = checked_add(total, a.cap);
  return total;
}

}  // namespace mrfcut
