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
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ailtl/matcher.hpp"
#include "ailtl/parser.hpp"
#include "ailtl/rng.hpp"

using namespace ailtl;

namespace {

EventPattern patternOf(const std::string& text) {
    return parseEventPattern(text);
}

std::vector<std::pair<Term, Time>> eventsOf(const std::vector<std::string>& functors) {
    std::vector<std::pair<Term, Time>> out;
    int64_t t = 0;
    for (const auto& f : functors) out.push_back({parseGroundTerm(f), Time(t += 10)});
    return out;
}

bool relevantTo(const EventPattern& pattern, const std::string& functor) {
    for (const auto& el : pattern.elements)
        if (el.event.functor == functor) return true;
    return false;
}

} // namespace

TEST_CASE("any-order groups accept every ordering and reject repeats") {
    EventPattern p = patternOf("a , b , c");
    CHECK(matches(p, eventsOf({"b", "x", "a", "c"})));
    CHECK(matches(p, eventsOf({"c", "b", "a"})));
    CHECK_FALSE(matches(p, eventsOf({"a", "b"})));
    CHECK(matchStatus(p, eventsOf({"a", "a", "b", "c"})) == MatchStatus::Incompatible);
}

TEST_CASE("a relevant event the pattern cannot take refutes the match") {
    EventPattern p = patternOf("e1 >> e2");
    CHECK(matches(p, eventsOf({"e1", "e2"})));
    CHECK(matchStatus(p, eventsOf({"e2"})) == MatchStatus::Incompatible);
    CHECK(matchStatus(p, eventsOf({"e1", "e1", "e2"})) == MatchStatus::Incompatible);
}

TEST_CASE("immediately-before tolerates no gap, before does") {
    EventPattern strict = patternOf("a > b");
    CHECK(matches(strict, eventsOf({"a", "b"})));
    CHECK(matchStatus(strict, eventsOf({"a", "x", "b"})) == MatchStatus::Incompatible);

    EventPattern loose = patternOf("a >> b");
    CHECK(matches(loose, eventsOf({"a", "x", "y", "b"})));
}

TEST_CASE("a voided adjacency refutes the match at once") {
    // The gap event itself must settle it, with no later relevant event
    // arriving to flush stalled alternatives.
    Matcher m(patternOf("ping > pong"));
    m.feed(parseGroundTerm("ping"), Time(10));
    CHECK(m.status() == MatchStatus::Partial);
    m.feed(parseGroundTerm("quux"), Time(20));
    CHECK(m.status() == MatchStatus::Incompatible);
}

TEST_CASE("skipped stars forward the adjacency obligation") {
    EventPattern p = patternOf("a > b* > c");
    CHECK(matches(p, eventsOf({"a", "c"})));
    CHECK(matches(p, eventsOf({"a", "b", "b", "c"})));
    CHECK(matchStatus(p, eventsOf({"a", "x", "c"})) == MatchStatus::Incompatible);
    CHECK(matchStatus(p, eventsOf({"a", "b", "x", "c"})) == MatchStatus::Incompatible);

    EventPattern loose = patternOf("a >> b* >> c");
    CHECK(matches(loose, eventsOf({"a", "x", "c"})));

    // With no b consumed, the b-c adjacency is vacuous.
    EventPattern mixed = patternOf("a >> b* > c");
    CHECK(matches(mixed, eventsOf({"a", "x", "c"})));
    CHECK(matchStatus(mixed, eventsOf({"a", "b", "x", "c"})) == MatchStatus::Incompatible);
}

TEST_CASE("wildcards take exactly one event of any shape") {
    EventPattern p = patternOf("e1+ >> e2 , e3 > _ > e4");
    CHECK(matches(p, eventsOf({"e1", "e1", "e2", "e3", "x", "e4"})));
    CHECK(matches(p, eventsOf({"e1", "e3", "e2", "w", "e4"})));
    CHECK(matchStatus(p, eventsOf({"e2", "e1"})) == MatchStatus::Incompatible);
    CHECK(matchStatus(p, eventsOf({"e1", "e2", "e3", "x", "y", "e4"})) ==
          MatchStatus::Incompatible);
    CHECK(matchStatus(p, eventsOf({"e1", "e2", "e3", "e4"})) == MatchStatus::Partial);

    // The wildcard may stand for any one of several candidate events.
    EventPattern w = patternOf("_ > a");
    CHECK(matches(w, eventsOf({"x", "a"})));
    CHECK(matches(w, eventsOf({"x", "y", "a"})));
}

TEST_CASE("status starts Empty and moves to Partial on first consumption") {
    Matcher m(patternOf("a >> b"));
    CHECK(m.status() == MatchStatus::Empty);
    m.feed(parseGroundTerm("x"), Time(1));
    CHECK(m.status() == MatchStatus::Empty);
    m.feed(parseGroundTerm("a"), Time(2));
    CHECK(m.status() == MatchStatus::Partial);
    m.feed(parseGroundTerm("b"), Time(3));
    CHECK(m.status() == MatchStatus::Complete);
    m.feed(parseGroundTerm("b"), Time(4));
    CHECK(m.status() == MatchStatus::Complete);
}

TEST_CASE("argument unification binds pattern variables consistently") {
    EventPattern p = patternOf("service(Car) at T >> trip(Car)");
    Matcher m(p);
    m.feed(parseGroundTerm("service(car1)"), Time(100));
    CHECK(m.status() == MatchStatus::Partial);
    m.feed(parseGroundTerm("trip(car2)"), Time(150));
    CHECK(m.status() == MatchStatus::Incompatible);

    Matcher ok(p);
    ok.feed(parseGroundTerm("service(car1)"), Time(100));
    ok.feed(parseGroundTerm("trip(car1)"), Time(200));
    REQUIRE(ok.status() == MatchStatus::Complete);
    CHECK(ok.binding().lookup("Car") == Value{Symbol{"car1"}});
    CHECK(ok.binding().lookup("T") == Value{int64_t{100}});
}

TEST_CASE("the same time variable must agree across elements") {
    EventPattern p = patternOf("a at T >> b at T");
    CHECK(matchStatus(p, {{parseGroundTerm("a"), Time(5)}, {parseGroundTerm("b"), Time(5)}}) ==
          MatchStatus::Complete);
    CHECK(matchStatus(p, {{parseGroundTerm("a"), Time(5)}, {parseGroundTerm("b"), Time(9)}}) ==
          MatchStatus::Incompatible);
}

TEST_CASE("residual keeps the unmatched remainder") {
    EventPattern p = patternOf("a >> b+ , d >> c");
    Matcher m(p);
    m.feed(parseGroundTerm("a"), Time(1));
    m.feed(parseGroundTerm("b"), Time(2));
    CHECK(render(m.residual()) == "b* , d >> c");

    Matcher fresh(p);
    CHECK(render(fresh.residual()) == "a >> b+ , d >> c");

    Matcher bound(patternOf("pay(X) >> ship(X)"));
    bound.feed(parseGroundTerm("pay(o1)"), Time(1));
    CHECK(render(bound.residual()) == "ship(o1)");
}

TEST_CASE("an all-star pattern is complete from the start") {
    Matcher m(patternOf("a* , b*"));
    CHECK(m.status() == MatchStatus::Complete);
}

TEST_CASE("splitting a duplicate-free run at any point preserves the outcome") {
    Rng rng(20260823);
    int checked = 0;
    for (int round = 0; round < 400; ++round) {
        // Distinct-functor pattern over `,` and `>>` with no wildcards: the
        // shapes whose residual summarizes the state, alphabet caveat aside.
        int n = static_cast<int>(rng.range(1, 5));
        std::vector<std::string> pool = {"f0", "f1", "f2", "f3", "f4"};
        for (int i = 4; i > 0; --i)
            std::swap(pool[i], pool[rng.below(i + 1)]);

        std::string text;
        std::vector<Multiplicity> mults;
        for (int i = 0; i < n; ++i) {
            if (i) text += rng.chance(50) ? " , " : " >> ";
            text += pool[i];
            unsigned roll = rng.below(100);
            Multiplicity mult = roll < 60   ? Multiplicity::One
                                : roll < 80 ? Multiplicity::Plus
                                            : Multiplicity::Star;
            mults.push_back(mult);
            if (mult == Multiplicity::Plus) text += '+';
            if (mult == Multiplicity::Star) text += '*';
        }
        EventPattern pattern = patternOf(text);

        std::vector<std::string> functors;
        for (int i = 0; i < n; ++i) {
            int copies = 1;
            if (mults[i] == Multiplicity::Star) copies = static_cast<int>(rng.range(0, 2));
            if (mults[i] == Multiplicity::Plus) copies = static_cast<int>(rng.range(1, 2));
            for (int c = 0; c < copies; ++c) functors.push_back(pool[i]);
        }
        for (int extra = static_cast<int>(rng.range(0, 3)); extra > 0; --extra)
            functors.insert(functors.begin() + rng.below(functors.size() + 1),
                            "g" + std::to_string(extra));
        if (functors.size() > 1 && rng.chance(30))
            std::swap(functors[rng.below(functors.size())],
                      functors[rng.below(functors.size())]);

        auto events = eventsOf(functors);
        MatchStatus whole = matchStatus(pattern, events);

        size_t split = rng.below(events.size() + 1);
        Matcher m(pattern);
        for (size_t i = 0; i < split; ++i) m.feed(events[i].first, events[i].second);

        std::string traceText;
        for (const auto& f : functors) traceText += f + " ";
        INFO("pattern: ", text, " | trace: ", traceText, "| split: ", split);
        if (m.status() == MatchStatus::Complete || m.status() == MatchStatus::Incompatible) {
            // Decided statuses absorb: the rest of the run cannot move them.
            CHECK(whole == m.status());
            ++checked;
        } else {
            // The residual drops the functors of fully consumed elements, so
            // refeeding through it is only meaningful while the suffix stays
            // inside the residual's alphabet.
            EventPattern res = m.residual();
            std::set<std::string> kept;
            for (const auto& el : res.elements) kept.insert(el.event.functor);
            bool covered = true;
            for (size_t i = split; i < events.size(); ++i)
                if (relevantTo(pattern, functors[i]) && !kept.count(functors[i]))
                    covered = false;
            if (covered) {
                std::vector<std::pair<Term, Time>> suffix(events.begin() + split,
                                                          events.end());
                INFO("residual: ", render(res));
                MatchStatus rest = matchStatus(res, suffix);
                bool wholeDone = whole == MatchStatus::Complete;
                bool restDone = rest == MatchStatus::Complete;
                CHECK(wholeDone == restDone);
                CHECK((whole == MatchStatus::Incompatible) ==
                      (rest == MatchStatus::Incompatible));
                ++checked;
            }
        }
    }
    CHECK(checked > 300);
}
