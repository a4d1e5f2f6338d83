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

#include "ailtl/formula.hpp"

using namespace ailtl;

namespace {

IntervalOp op1(OpKind kind, int64_t m) {
    IntervalOp op;
    op.kind = kind;
    op.m = Time(m);
    return op;
}

IntervalOp op2(OpKind kind, int64_t m, int64_t n) {
    IntervalOp op = op1(kind, m);
    op.n = Time(n);
    return op;
}

} // namespace

TEST_CASE("relative operators anchor at the activation time") {
    Time act(100);

    auto next = interestInterval(op1(OpKind::Next, 30), act);
    CHECK(next.v == Time(130));
    CHECK(next.w == Time(130));
    CHECK(next.crucial == Time(130));

    auto ev = interestInterval(op1(OpKind::Eventually, 50), act);
    CHECK(ev.v == Time(100));
    CHECK(ev.w == Time(150));
    CHECK(ev.crucial == Time(150));
}

TEST_CASE("two-bound operators use absolute times") {
    auto ev = interestInterval(op2(OpKind::EventuallyBetween, 200, 500), Time(100));
    CHECK(ev.v == Time(200));
    CHECK(ev.w == Time(500));
    CHECK(ev.crucial == Time(500));

    auto al = interestInterval(op2(OpKind::AlwaysBetween, 200, 500), Time(100));
    CHECK(al.v == Time(200));
    CHECK(al.w == Time(500));

    auto nv = interestInterval(op2(OpKind::NeverBetween, 200, 500), Time(100));
    CHECK(nv.v == Time(200));
    CHECK(nv.crucial == Time(500));
}

TEST_CASE("open-ended operators have no closing bound") {
    auto al = interestInterval(op1(OpKind::Always, 200), Time(100));
    CHECK(al.v == Time(200));
    CHECK_FALSE(al.w.has_value());
    CHECK_FALSE(al.crucial.has_value());

    auto as = interestInterval(op1(OpKind::AlwaysStrong, 200), Time(100));
    CHECK(as.v == Time(0));
    CHECK_FALSE(as.w.has_value());

    IntervalOp some = op1(OpKind::Sometimes, 200);
    some.f = Time(30);
    auto so = interestInterval(some, Time(100));
    CHECK(so.v == Time(200));
    CHECK_FALSE(so.w.has_value());
}

TEST_CASE("NOW is the activation instant") {
    IntervalOp op;
    op.kind = OpKind::Now;
    auto i = interestInterval(op, Time(77));
    CHECK(i.v == Time(77));
    CHECK(i.w == Time(77));
    CHECK(i.crucial == Time(77));
}

TEST_CASE("strong ALWAYS over an interval checks the first state past it") {
    auto i = interestInterval(op2(OpKind::AlwaysStrongBetween, 10, 20), Time(5));
    CHECK(i.v == Time(0));
    CHECK(i.w == Time(20));
    CHECK(i.crucial == Time(21));
}

TEST_CASE("NEVER_B watches [0, m) and NEVER_A watches (m, inf)") {
    auto nb = interestInterval(op1(OpKind::NeverBefore, 50), Time(5));
    CHECK(nb.v == Time(0));
    CHECK(nb.w == Time(49));
    CHECK(nb.crucial == Time(49));

    auto nb0 = interestInterval(op1(OpKind::NeverBefore, 0), Time(5));
    CHECK(nb0.v == Time(0));
    CHECK(nb0.w == Time(0));

    auto na = interestInterval(op1(OpKind::NeverAfter, 50), Time(5));
    CHECK(na.v == Time(51));
    CHECK_FALSE(na.w.has_value());
}

TEST_CASE("bounded SOMETIMES ends at its last reachable checkpoint") {
    IntervalOp op = op2(OpKind::SometimesBetween, 100, 190);
    op.f = Time(30);
    auto i = interestInterval(op, Time(0));
    CHECK(i.v == Time(100));
    CHECK(i.w == Time(190));
    CHECK(i.crucial == Time(190));

    op.n = Time(185);
    i = interestInterval(op, Time(0));
    CHECK(i.w == Time(160));
    CHECK(i.crucial == Time(160));
}

TEST_CASE("reversed intervals are rejected") {
    CHECK_THROWS_AS(interestInterval(op2(OpKind::EventuallyBetween, 500, 200), Time(0)),
                    FormulaError);
    IntervalOp bad = op2(OpKind::SometimesBetween, 10, 5);
    bad.f = Time(1);
    CHECK_THROWS_AS(interestInterval(bad, Time(0)), FormulaError);
}

TEST_CASE("SOMETIMES needs a positive frequency") {
    IntervalOp op = op1(OpKind::Sometimes, 100);
    op.f = Time(0);
    CHECK_THROWS_AS(interestInterval(op, Time(0)), FormulaError);
}

TEST_CASE("free variables cover bounds, frequency and check period") {
    IntervalOp op;
    op.kind = OpKind::SometimesBetween;
    op.m = Variable{"T"};
    op.n = Variable{"T1"};
    op.f = Variable{"F"};
    auto vars = freeVariables(op);
    REQUIRE(vars.size() == 3);
    CHECK(vars[0] == "T");
    CHECK(vars[1] == "T1");
    CHECK(vars[2] == "F");
    CHECK_FALSE(op.ground());
}

TEST_CASE("substitution grounds an operator or reports what is missing") {
    IntervalOp op;
    op.kind = OpKind::EventuallyBetween;
    op.m = Variable{"T"};
    op.n = Variable{"T1"};

    Binding b;
    b.bind("T", Value{int64_t{100}});
    b.bind("T1", Value{int64_t{400}});
    IntervalOp g = substitute(op, b);
    CHECK(g.ground());
    CHECK(std::get<Time>(*g.m) == Time(100));
    CHECK(std::get<Time>(*g.n) == Time(400));

    Binding partial;
    partial.bind("T", Value{int64_t{100}});
    CHECK_THROWS_AS(substitute(op, partial), FormulaError);

    Binding wrongKind;
    wrongKind.bind("T", Value{Symbol{"noon"}});
    wrongKind.bind("T1", Value{int64_t{400}});
    CHECK_THROWS_AS(substitute(op, wrongKind), FormulaError);
}

TEST_CASE("substituting a ground operator is the identity") {
    IntervalOp op = op2(OpKind::AlwaysBetween, 10, 90);
    op.checkEvery = Time(30);
    Binding b;
    b.bind("X", Value{int64_t{5}});
    CHECK(substitute(op, b) == op);
}
