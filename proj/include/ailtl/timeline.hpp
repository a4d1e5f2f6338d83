/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#ifndef AILTL_TIMELINE_HPP
#define AILTL_TIMELINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ailtl/event.hpp"
#include "ailtl/term.hpp"
#include "ailtl/time.hpp"

namespace ailtl {

class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

/// The current past events (one per functor/arity/kind) together with the
/// superseded older versions. Materialized on demand; queries use the
/// indexed storage below instead.
struct History {
    std::vector<PastEvent> current;
    std::vector<PastEvent> superseded;
};

namespace detail {

struct FactChange {
    std::uint64_t seq;
    std::uint32_t state;
    bool asserted;
};

struct Occurrence {
    Term term;
    Time t;
    EventKind kind;
    std::uint64_t seq;
    std::uint32_t state;
};

struct StateInfo {
    Time t;
    std::uint64_t firstSeq; // seq of the first event folded into this state
};

struct FunctorKey {
    std::string functor;
    std::uint32_t arity;

    auto operator<=>(const FunctorKey&) const = default;
};

struct TimelineData {
    std::vector<TraceEvent> events; // seq == index
    std::vector<StateInfo> states;
    std::map<FunctorKey, std::map<std::vector<TermArg>, std::vector<FactChange>>> facts;
    std::map<FunctorKey, std::vector<Occurrence>> past;
};

} // namespace detail

/// An immutable view of the knowledge base as of one ingested event.
///
/// Snapshots are cheap values: they pin the backing storage with a shared
/// pointer plus a sequence watermark, so later ingestion (including further
/// events folded into the same instant) is invisible through an existing
/// snapshot. Reads are safe from any thread; ingestion is single-writer and
/// must not run concurrently with reads.
class Snapshot {
public:
    std::uint32_t index() const { return index_; }
    Time t() const { return t_; }

    bool hasFact(const Term& fact) const;
    /// Enumerates ground facts unifying with `pattern` under `binding`, in
    /// canonical term order. Returns the extended bindings.
    void matchFacts(const Term& pattern, const Binding& binding,
                    const std::function<void(const Binding&)>& yield) const;

    /// Latest remembered occurrence for functor/arity, optionally filtered
    /// by kind. Versions superseded at an earlier state (or earlier within
    /// this instant) are not returned.
    std::optional<PastEvent> currentPast(const std::string& functor, std::uint32_t arity,
                                         std::optional<EventKind> kind) const;

    /// Every observable event at or after `since`, up to this snapshot, in
    /// ingestion order.
    std::vector<PastEvent> occurrencesSince(Time since) const;

    History history() const;

    /// All ground facts present, in canonical order. Test and report helper.
    std::vector<Term> factList() const;

private:
    friend class Timeline;
    Snapshot(std::shared_ptr<const detail::TimelineData> data, std::uint32_t index, Time t,
             std::uint64_t seqBound)
        : data_(std::move(data)), index_(index), t_(t), seqBound_(seqBound)
    {
    }

    std::shared_ptr<const detail::TimelineData> data_;
    std::uint32_t index_ = 0;
    Time t_;
    std::uint64_t seqBound_ = 0;
};

/// Append-only builder for the timed state sequence.
///
/// Ingesting an event whose timestamp is strictly greater than the latest
/// state opens a new state; an event carrying the same timestamp folds into
/// the latest state, applied in trace order. Timestamps may never regress.
class Timeline {
public:
    Timeline();

    /// Applies one event and returns the snapshot that includes it.
    /// Throws IngestError on a timestamp regression, a non-ground term, or
    /// a retraction of an absent fact.
    Snapshot ingest(const TraceEvent& ev);

    bool empty() const { return data_->states.empty(); }
    std::size_t stateCount() const { return data_->states.size(); }

    /// Canonical snapshot of state `index` with every fold applied.
    Snapshot state(std::uint32_t index) const;
    Snapshot last() const;

    enum class AtMode {
        FirstAtOrAfter,
        LastAtOrBefore,
    };

    /// Boundary state for a time bound, or nullopt when no state qualifies.
    std::optional<Snapshot> snapshotAt(Time t, AtMode mode) const;

    const std::vector<TraceEvent>& events() const { return data_->events; }

private:
    std::shared_ptr<detail::TimelineData> data_;
};

} // namespace ailtl

#endif
