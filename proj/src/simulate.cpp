#include <algorithm>
#include <deque>
#include <thread>

#include "mtf/branching.hpp"

namespace mtf {

Simulator::Simulator(const OffspringLaw& law) : d_(law.types()) {
  if (classify(law).regime == Regime::supercritical)
    throw InvalidArgument("simulation needs a subcritical or critical law");
  support_.resize(d_);
  cdf_.resize(d_);
  for (int i = 0; i < d_; ++i) {
    Rational acc(0);
    for (const auto& [z, p] : law[i]) {
      acc += p;
      support_[i].push_back(z);
      cdf_[i].push_back(acc.get_d());
    }
  }
}

std::mt19937_64 Simulator::replica_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::size_t Simulator::draw_index(Color t, std::mt19937_64& rng) const {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const auto& cdf = cdf_[t];
  const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  return std::min(k, cdf.size() - 1);
}

SimulationResult Simulator::run(const RootTypeSequence& c, std::mt19937_64& rng,
                                std::int64_t cap) const {
  SimulationResult out;
  std::vector<IntVec> offspring;
  std::vector<Color> queue;
  std::int64_t total = 0;
  for (Color root : c) {
    if (root < 0 || root >= d_) throw InvalidArgument("root color out of range");
    queue.assign(1, root);
    if (++total > cap) {
      out.truncated = true;
      out.vertices = total - 1;
      return out;
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Color t = queue[h];
      const IntVec& z = support_[t][draw_index(t, rng)];
      for (Color j = 0; j < d_; ++j)
        for (int m = 0; m < z[j]; ++m) queue.push_back(j);
      total += sum(z);
      if (total > cap) {
        out.truncated = true;
        out.vertices = total;
        return out;
      }
      offspring.push_back(z);
    }
  }
  out.vertices = total;
  out.forest = TypedForest::from_offspring(d_, c, offspring);
  return out;
}

SimulationResult simulate_forest(const OffspringLaw& law, const RootTypeSequence& c,
                                 std::uint64_t seed, std::int64_t cap) {
  const Simulator sim(law);
  std::mt19937_64 rng = Simulator::replica_stream(seed, 0);
  return sim.run(c, rng, cap);
}

namespace {

struct PendingSubtree {
  std::int64_t pending = 1;
  std::vector<std::uint32_t> buffer;
};

class WalkStream {
 public:
  WalkStream(const Simulator& sim, std::int64_t steps, std::vector<bool> reachable,
             std::vector<std::vector<bool>> reach)
      : sim_(sim), steps_(steps), reach_(std::move(reach)), subtrees_(sim.types()),
        pointer_(sim.types(), 0) {
    out_.reachable = std::move(reachable);
    out_.counts.resize(sim.types());
    for (int i = 0; i < sim.types(); ++i) out_.counts[i].assign(sim.support(i).size(), 0);
    emitted_.assign(sim.types(), 0);
  }

  bool done() const {
    for (std::size_t t = 0; t < emitted_.size(); ++t)
      if (out_.reachable[t] && emitted_[t] < steps_) return false;
    return true;
  }

  std::int64_t open_subtree(Color t) {
    subtrees_[t].emplace_back();
    return static_cast<std::int64_t>(subtrees_[t].size()) - 1;
  }

  bool needed(Color s) const {
    for (std::size_t t = 0; t < emitted_.size(); ++t)
      if (reach_[s][t] && emitted_[t] < steps_) return true;
    return false;
  }

  void record(Color t, std::int64_t sid, std::uint32_t k) {
    if (sid == static_cast<std::int64_t>(pointer_[t]))
      emit(t, k);
    else
      subtrees_[t][sid].buffer.push_back(k);
  }

  void close_one(Color t, std::int64_t sid, std::int64_t added) {
    PendingSubtree& st = subtrees_[t][sid];
    st.pending += added - 1;
    if (sid != static_cast<std::int64_t>(pointer_[t]) || st.pending > 0) return;
    auto& list = subtrees_[t];
    ++pointer_[t];
    while (pointer_[t] < list.size()) {
      PendingSubtree& next = list[pointer_[t]];
      for (std::uint32_t k : next.buffer) emit(t, k);
      next.buffer.clear();
      next.buffer.shrink_to_fit();
      if (next.pending > 0) break;
      ++pointer_[t];
    }
  }

  WalkTally& result() { return out_; }

 private:
  void emit(Color t, std::uint32_t k) {
    if (emitted_[t] >= steps_) return;
    ++out_.counts[t][k];
    ++emitted_[t];
  }

  const Simulator& sim_;
  std::int64_t steps_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::deque<PendingSubtree>> subtrees_;
  std::vector<std::size_t> pointer_;
  std::vector<std::int64_t> emitted_;
  WalkTally out_;
};

}  // namespace

WalkTally walk_increment_tally(const OffspringLaw& law, const RootTypeSequence& c, std::uint64_t seed,
                               std::int64_t steps, std::int64_t draw_cap) {
  const Simulator sim(law);
  const int d = law.types();
  if (c.empty()) throw InvalidArgument("need at least one root");
  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  for (int i = 0; i < d; ++i) {
    reach[i][i] = true;
    for (const auto& [z, p] : law[i])
      for (int j = 0; j < d; ++j)
        if (z[j] > 0) reach[i][j] = true;
  }
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<bool> reachable(d, false);
  for (Color root : c) {
    if (root < 0 || root >= d) throw InvalidArgument("root color out of range");
    for (int j = 0; j < d; ++j)
      if (reach[root][j]) reachable[j] = true;
  }

  WalkStream stream(sim, steps, std::move(reachable), reach);
  struct Pending {
    Color color;
    std::int64_t subtree;
  };
  std::deque<Pending> queue;
  std::int64_t draws = 0;
  std::int64_t replica = 0;
  while (!stream.done()) {
    std::mt19937_64 rng = Simulator::replica_stream(seed, static_cast<std::uint64_t>(replica++));
    for (Color root : c) {
      if (stream.done()) break;
      queue.clear();
      queue.push_back({root, stream.open_subtree(root)});
      while (!queue.empty() && !stream.done()) {
        const Pending v = queue.front();
        queue.pop_front();
        if (!stream.needed(v.color)) {
          stream.close_one(v.color, v.subtree, 0);
          continue;
        }
        if (++draws > draw_cap) throw CapExceeded("walk tally exceeded its draw cap");
        const std::size_t k = sim.draw_index(v.color, rng);
        const IntVec& z = sim.support(v.color)[k];
        stream.record(v.color, v.subtree, static_cast<std::uint32_t>(k));
        for (Color j = 0; j < d; ++j)
          for (int m = 0; m < z[j]; ++m)
            queue.push_back({j, j == v.color ? v.subtree : stream.open_subtree(j)});
        stream.close_one(v.color, v.subtree, z[v.color]);
      }
    }
  }
  WalkTally& out = stream.result();
  out.draws = draws;
  out.replicas = replica;
  return std::move(out);
}

EventTable simulate_events(const OffspringLaw& law, const RootTypeSequence& c,
                           std::uint64_t seed, std::int64_t replicas, std::int64_t cap,
                           int jobs) {
  const Simulator sim(law);
  jobs = std::max(1, jobs);
  std::vector<EventTable> partial(jobs);
  auto work = [&](int w) {
    EventTable& t = partial[w];
    for (std::int64_t k = w; k < replicas; k += jobs) {
      std::mt19937_64 rng = Simulator::replica_stream(seed, static_cast<std::uint64_t>(k));
      const SimulationResult res = sim.run(c, rng, cap);
      if (res.truncated)
        ++t.truncated;
      else
        ++t.counts[progeny_event(*res.forest)];
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  EventTable out;
  out.replicas = replicas;
  for (const EventTable& t : partial) {
    out.truncated += t.truncated;
    for (const auto& [e, n] : t.counts) out.counts[e] += n;
  }
  return out;
}

}  // namespace mtf
