#include <gtest/gtest.h>

#include <algorithm>

#include "confkit/model.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace confkit;
using namespace fixtures;

namespace {

Configuration without(Configuration c, const ComponentId& id) {
  std::erase_if(c.components, [&](const Component& x) { return x.id == id; });
  return c;
}

}  // namespace

TEST(ValidateConfiguration, PsychoConfigurationsAreWellFormed) {
  EXPECT_TRUE(validate_configuration(c_psy1()).ok());
  EXPECT_TRUE(validate_configuration(c_psy2()).ok());
}

TEST(ValidateConfiguration, MissingChildBreaksClosureAndRoot) {
  const auto report = validate_configuration(without(c_psy1(), bin1()));
  ASSERT_TRUE(report.has(Condition::ChildrenClosure));
  const auto* v = report.first(Condition::ChildrenClosure);
  EXPECT_EQ(v->subjects, (std::vector<std::string>{psy1().to_string(), bin1().to_string()}));
  // psycho, mlib.so and glib.so lose their parent.
  EXPECT_TRUE(report.has(Condition::UniqueRoot));
}

TEST(ValidateConfiguration, TwoUnrelatedLeavesHaveTwoRoots) {
  Configuration c{"two", {Component::leaf({"A", "a", "o", 1}, {}), Component::leaf({"A", "b", "o", 1}, {})}};
  const auto report = validate_configuration(c);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].condition, Condition::UniqueRoot);
}

TEST(ValidateConfiguration, EachConditionIsDetected) {
  const ComponentId r{"R", "r", "o", 1}, a{"A", "a", "o", 1}, b{"A", "b", "o", 1};

  Configuration dup{"dup", {Component::composite(r, {a}), Component::leaf(a, {}), Component::leaf(a, {"x"})}};
  EXPECT_TRUE(validate_configuration(dup).has(Condition::DuplicateId));

  Configuration overlap{"overlap", {Component::composite(r, {a}, {a}), Component::leaf(a, {})}};
  EXPECT_TRUE(validate_configuration(overlap).has(Condition::DependencyChildOverlap));

  Configuration dangling{"dangling", {Component::composite(r, {a}), Component::leaf(a, {}, {b})}};
  EXPECT_TRUE(validate_configuration(dangling).has(Condition::DependencyClosure));

  Configuration shared{"shared",
                       {Component::composite(r, {a, b}), Component::composite(a, {{"C", "c", "o", 1}}),
                        Component::composite(b, {{"C", "c", "o", 1}}), Component::leaf({"C", "c", "o", 1}, {})}};
  EXPECT_TRUE(validate_configuration(shared).has(Condition::TreeShape));

  // r is the only root; a and b form a cycle beside it.
  Configuration cycle{"cycle",
                      {Component::composite(r, {}), Component::composite(a, {b}), Component::composite(b, {a})}};
  EXPECT_TRUE(validate_configuration(cycle).has(Condition::Unreachable));
}

TEST(ValidateConfiguration, GeneratedConfigurationsAreWellFormed) {
  gen::Rng r(21);
  for (int i = 0; i < 500; ++i) {
    const auto c = gen::gen_config(r, 8);
    EXPECT_TRUE(validate_configuration(c).ok());
  }
}

TEST(ValidateSpec, PsychoIsWellFormed) {
  const auto report = validate_spec(cs_psycho());
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.warnings.empty());
}

TEST(ValidateSpec, RootTotalBelowChildSum) {
  auto cs = cs_psycho();
  cs.specs[0].total = Interval::at_least(3);
  const auto report = validate_spec(cs);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].condition, Condition::IntervalSum);
  EXPECT_EQ(report.violations[0].subjects, std::vector<std::string>{"Psycho"});
  EXPECT_NE(report.violations[0].message.find("[2,*]"), std::string::npos);
}

TEST(ValidateSpec, DuplicateTypes) {
  auto cs = cs_psycho();
  cs.specs.push_back({aci("PScr", NameSet::literal("x"), OriginSet::any()), {}, {}, Interval::exactly(0)});
  EXPECT_TRUE(validate_spec(cs).has(Condition::DistinctTypes));
}

TEST(ValidateSpec, StructuralConditions) {
  const auto A = AbstractComponentId::any_of("A"), B = AbstractComponentId::any_of("B");
  const auto C = AbstractComponentId::any_of("C");
  const Interval one = Interval::exactly(1), none = Interval::exactly(0);

  ConfigurationSpec closure{"s", {{A, {}, {{B, one}}, one}}};
  EXPECT_TRUE(validate_spec(closure).has(Condition::ChildrenClosure));

  ConfigurationSpec coverage{"s", {{A, {C}, {}, none}}};
  EXPECT_TRUE(validate_spec(coverage).has(Condition::DependencyCoverage));

  ConfigurationSpec both{"s", {{A, {B}, {{B, one}}, one}, {B, {}, {}, none}}};
  EXPECT_TRUE(validate_spec(both).has(Condition::DependencyChildType));

  const auto B1 = aci("B", NameSet::literal("b1"), OriginSet::any());
  ConfigurationSpec two_deps{"s", {{A, {B, B1}, {}, none}, {B, {}, {}, none}}};
  EXPECT_TRUE(validate_spec(two_deps).has(Condition::DuplicateDependencyType));

  ConfigurationSpec two_roots{"s", {{A, {}, {}, none}, {B, {}, {}, none}}};
  EXPECT_TRUE(validate_spec(two_roots).has(Condition::UniqueRoot));

  ConfigurationSpec shared{"s", {{A, {}, {{C, one}}, one}, {B, {}, {{C, one}}, one}, {C, {}, {}, none}}};
  EXPECT_TRUE(validate_spec(shared).has(Condition::TreeShape));

  const auto B2 = aci("B", NameSet::literal("b2"), OriginSet::any());
  ConfigurationSpec child_types{"s", {{A, {}, {{B, one}, {B2, one}}, Interval::exactly(2)}, {B, {}, {}, none}}};
  EXPECT_TRUE(validate_spec(child_types).has(Condition::DuplicateChildType));
}

TEST(ValidateSpec, InformalSuccessorLawIsOnlyAWarning) {
  const auto A = AbstractComponentId::any_of("A"), B = AbstractComponentId::any_of("B");
  // [1,1] ⊆ [0,3] satisfies condition 6, but 0 < Σlo = 1.
  ConfigurationSpec cs{"s", {{A, {}, {{B, Interval::exactly(1)}}, Interval(0, 3)}, {B, {}, {}, Interval::exactly(0)}}};
  const auto report = validate_spec(cs);
  EXPECT_TRUE(report.ok());
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_EQ(report.warnings[0].condition, Condition::SuccessorIntervals);
}

TEST(ValidateSpec, GeneratedSpecsAreWellFormed) {
  gen::Rng r(22);
  for (int i = 0; i < 500; ++i) {
    const auto cs = gen::gen_valid_spec(r);
    const auto report = validate_spec(cs);
    EXPECT_TRUE(report.ok()) << (report.violations.empty() ? "" : report.violations[0].message);
  }
}

TEST(Roots, PsychoRoots) {
  EXPECT_EQ(root_of(c_psy1()).id, psy1());
  EXPECT_EQ(root_of(c_psy2()).id, psy2());
  Configuration single{"one", {Component::leaf({"A", "a", "o", 1}, {"f"})}};
  EXPECT_EQ(root_of(single).id, single.components[0].id);
  EXPECT_THROW(root_of(without(c_psy1(), bin1())), ValidationError);
  EXPECT_EQ(root_spec(cs_psycho()).type(), "Psycho");
}

TEST(Roots, SpecNodeForType) {
  const auto cs = cs_psycho();
  ASSERT_NE(spec_node_for_type(cs, "Bin"), nullptr);
  EXPECT_EQ(spec_node_for_type(cs, "Bin")->total, Interval::exactly(3));
  EXPECT_EQ(spec_node_for_type(cs, "Foo"), nullptr);
  EXPECT_EQ(spec_node_for_type(cs, "PScr")->dependencies,
            (std::set<AbstractComponentId>{aci_pscr(), aci_cglib()}));
}

TEST(Configuration, EqualityIgnoresOrderAndLabel) {
  gen::Rng r(23);
  for (int i = 0; i < 200; ++i) {
    auto c = gen::gen_config(r, 6);
    auto d = c;
    std::shuffle(d.components.begin(), d.components.end(), r);
    d.name = "other";
    EXPECT_EQ(c, d);
    EXPECT_EQ(fingerprint(c), fingerprint(d));
  }
  EXPECT_NE(fingerprint(c_psy1()), fingerprint(c_psy2()));
  auto changed = c_psy1();
  std::get<Elements>(changed.components[2].payload).names.insert("extra");
  EXPECT_NE(changed, c_psy1());
  EXPECT_NE(fingerprint(changed), fingerprint(c_psy1()));
}
