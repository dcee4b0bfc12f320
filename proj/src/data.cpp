#include "semrerank/data.hpp"

#include <algorithm>

#include "semrerank/errors.hpp"

namespace semrerank {

Beam::Beam(std::vector<BeamCandidate> candidates) : candidates_(std::move(candidates)) {
  std::stable_sort(candidates_.begin(), candidates_.end(),
                   [](const BeamCandidate& a, const BeamCandidate& b) { return a.rank < b.rank; });
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (candidates_[i].rank != static_cast<int>(i) + 1) {
      throw InvalidBeam("beam ranks must be unique and contiguous from 1; found rank " +
                        std::to_string(candidates_[i].rank) + " at position " +
                        std::to_string(i + 1));
    }
  }
}

const BeamCandidate& Beam::top() const {
  if (candidates_.empty()) throw EmptyBeam("beam has no candidates");
  return candidates_.front();
}

Beam Beam::truncated(std::size_t k) const {
  Beam out;
  out.candidates_.assign(candidates_.begin(),
                         candidates_.begin() + static_cast<std::ptrdiff_t>(std::min(k, size())));
  return out;
}

Dataset::Dataset(std::vector<DatasetExample> examples) : examples_(std::move(examples)) {
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const auto& ex = examples_[i];
    if (ex.utterance.text.empty()) throw DataError("example " + ex.id() + " has an empty utterance");
    if (!index_.emplace(ex.id(), i).second) throw DataError("duplicate example id " + ex.id());
  }
}

const DatasetExample* Dataset::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &examples_[it->second];
}

const Beam& beam_for(const BeamSet& beams, const std::string& id) {
  auto it = beams.find(id);
  if (it == beams.end()) throw MissingBeam(id);
  return it->second;
}

}  // namespace semrerank
