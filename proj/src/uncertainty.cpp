#include "armax_reach/uncertainty.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace armax_reach {

SetChannel SetChannel::constant(Zonotope z) {
  z.validate();
  SetChannel c;
  c.is_constant = true;
  c.entries.push_back(std::move(z));
  return c;
}

SetChannel SetChannel::per_step(std::vector<Zonotope> steps) {
  if (steps.empty()) throw std::invalid_argument("set channel: per-step list must be nonempty");
  const Eigen::Index dim = steps.front().dim();
  for (const auto& z : steps) {
    z.validate();
    if (z.dim() != dim) {
      throw std::invalid_argument("set channel: per-step sets must share one dimension");
    }
  }
  SetChannel c;
  c.is_constant = false;
  c.entries = std::move(steps);
  return c;
}

SetChannel SetChannel::constant_point(Eigen::VectorXd center) {
  const Eigen::Index n = center.size();
  return constant(Zonotope{std::move(center), Eigen::MatrixXd(n, 0)});
}

const Zonotope& SetChannel::at(int k) const {
  if (k < 0) throw std::out_of_range("set channel: negative step");
  if (is_constant) return entries.front();
  if (static_cast<std::size_t>(k) >= entries.size()) {
    throw std::out_of_range("set channel: step " + std::to_string(k) +
                            " beyond configured horizon " +
                            std::to_string(entries.size() - 1));
  }
  return entries[static_cast<std::size_t>(k)];
}

Eigen::Index SetChannel::dim() const { return entries.front().dim(); }

std::optional<int> SetChannel::horizon() const {
  if (is_constant) return std::nullopt;
  return static_cast<int>(entries.size()) - 1;
}

const Eigen::VectorXd& InputDecomposition::u_v_at(int k) const {
  if (k < 0) throw std::out_of_range("input decomposition: negative step");
  if (u_v_constant) return u_v.front();
  if (static_cast<std::size_t>(k) >= u_v.size()) {
    throw std::out_of_range("input decomposition: step " + std::to_string(k) +
                            " beyond configured signal");
  }
  return u_v[static_cast<std::size_t>(k)];
}

UncertaintySpec::UncertaintySpec(SetChannel u, SetChannel w, SetChannel v,
                                 std::shared_ptr<LabelRegistry> registry)
    : u_(std::move(u)), w_(std::move(w)), v_(std::move(v)), registry_(std::move(registry)) {
  if (!registry_) registry_ = std::make_shared<LabelRegistry>();
}

const SymbolicZonotope& UncertaintySpec::channel_set(Channel c, int k) {
  const int ci = static_cast<int>(c);
  auto it = channel_cache_.find({ci, k});
  if (it != channel_cache_.end()) return it->second;
  const SetChannel& ch = c == Channel::kU ? u_ : (c == Channel::kW ? w_ : v_);
  SymbolicZonotope z = to_symbolic(ch.at(k), *registry_);
  return channel_cache_.emplace(std::make_pair(ci, k), std::move(z)).first->second;
}

const SymbolicZonotope& UncertaintySpec::combined(int k) {
  auto it = combined_cache_.find(k);
  if (it != combined_cache_.end()) return it->second;
  SymbolicZonotope z = cartesian_product(
      cartesian_product(channel_set(Channel::kU, k), channel_set(Channel::kW, k)),
      channel_set(Channel::kV, k));
  return combined_cache_.emplace(k, std::move(z)).first->second;
}

std::optional<int> UncertaintySpec::horizon() const {
  std::optional<int> h;
  for (const SetChannel* c : {&u_, &w_, &v_}) {
    if (auto ch = c->horizon()) h = h ? std::min(*h, *ch) : *ch;
  }
  return h;
}

void UncertaintySpec::set_decomposition(InputDecomposition d) {
  d.u_c.validate();
  if (d.u_c.dim() != n_utilde()) {
    throw std::invalid_argument("input decomposition: U_c dimension must be n_u + n_w + n_v");
  }
  if (d.u_v.empty()) throw std::invalid_argument("input decomposition: u_v signal missing");
  for (const auto& v : d.u_v) {
    if (v.size() != n_utilde()) {
      throw std::invalid_argument("input decomposition: u_v entries must have length n_utilde");
    }
  }
  decomposition_ = std::move(d);
}

const InputDecomposition& UncertaintySpec::decomposition() const {
  if (!decomposition_) {
    throw std::invalid_argument("uncertainty spec: no input decomposition configured");
  }
  return *decomposition_;
}

}  // namespace armax_reach
