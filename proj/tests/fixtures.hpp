#pragma once

// The running Psycho example, built by hand so that the parser and printer
// are tested against values that do not depend on them.

#include <fstream>
#include <sstream>
#include <string>

#include "confkit/model.hpp"

namespace fixtures {

using namespace confkit;

#ifndef CONFKIT_DATA_DIR
#error "CONFKIT_DATA_DIR must point at the data directory"
#endif

inline std::string data_path(const std::string& file) { return std::string(CONFKIT_DATA_DIR) + "/" + file; }

inline std::string read_data(const std::string& file) {
  std::ifstream in(data_path(file), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AbstractComponentId aci(std::string type, NameSet names, OriginSet origins,
                               VersionSet versions = VersionSet::any()) {
  return {std::move(type), std::move(names), std::move(origins), std::move(versions)};
}

// CS_Psycho
inline AbstractComponentId aci_psycho() {
  return aci("Psycho", NameSet::prefix("psy"), OriginSet::literal("IMsk"));
}
inline AbstractComponentId aci_bin() { return aci("Bin", NameSet::prefix("bin"), OriginSet::literal("IMsk")); }
inline AbstractComponentId aci_pscr() { return AbstractComponentId::any_of("PScr"); }
inline AbstractComponentId aci_cglib() { return AbstractComponentId::any_of("CGLib"); }
inline AbstractComponentId aci_app() { return aci("App", NameSet::literal("psycho"), OriginSet::literal("IMsk")); }
inline AbstractComponentId aci_mlib() { return aci("MLib", NameSet::literal("mlib.so"), OriginSet::literal("IMsk")); }
inline AbstractComponentId aci_glib() { return aci("GLib", NameSet::literal("glib.so"), OriginSet::literal("IMsk")); }

inline ConfigurationSpec cs_psycho() {
  const Interval none = Interval::exactly(0);
  return ConfigurationSpec{
      "Psycho",
      {
          {aci_psycho(),
           {},
           {{aci_bin(), Interval::exactly(1)},
            {aci_pscr(), Interval::at_least(1)},
            {aci_cglib(), Interval::at_least(0)}},
           Interval::at_least(2)},
          {aci_bin(),
           {},
           {{aci_app(), Interval::exactly(1)},
            {aci_mlib(), Interval::exactly(1)},
            {aci_glib(), Interval::exactly(1)}},
           Interval::exactly(3)},
          {aci_pscr(), {aci_pscr(), aci_cglib()}, {}, none},
          {aci_cglib(), {}, {}, none},
          {aci_app(), {}, {}, none},
          {aci_mlib(), {}, {}, none},
          {aci_glib(), {}, {}, none},
      }};
}

// C_psy1
inline ComponentId psy1() { return {"Psycho", "psy1", "IMsk", 1}; }
inline ComponentId bin1() { return {"Bin", "bin1", "IMsk", 1}; }
inline ComponentId def_psc1() { return {"PScr", "def.psc", "IMsk", 1}; }
inline ComponentId psycho1() { return {"App", "psycho", "IMsk", 1}; }
inline ComponentId mlib1() { return {"MLib", "mlib.so", "IMsk", 1}; }
inline ComponentId glib1() { return {"GLib", "glib.so", "IMsk", 1}; }

inline Configuration c_psy1() {
  return Configuration{"psy1",
                       {
                           Component::composite(psy1(), {bin1(), def_psc1()}),
                           Component::composite(bin1(), {psycho1(), mlib1(), glib1()}),
                           Component::leaf(def_psc1(), {"def.psc"}),
                           Component::leaf(psycho1(), {"psycho"}),
                           Component::leaf(mlib1(), {"mlib.so"}),
                           Component::leaf(glib1(), {"glib.so"}),
                       }};
}

// C_psy2
inline ComponentId psy2() { return {"Psycho", "psy2", "IMsk", 2}; }
inline ComponentId bin2() { return {"Bin", "bin2", "IMsk", 2}; }
inline ComponentId def_psc2() { return {"PScr", "def.psc", "IMsk", 1}; }
inline ComponentId my_psc2() { return {"PScr", "my.psc", "Jane", 2}; }
inline ComponentId julib2() { return {"CGLib", "julib.so", "Jack", 1}; }
inline ComponentId psycho2() { return {"App", "psycho", "IMsk", 2}; }
inline ComponentId mlib2() { return {"MLib", "mlib.so", "IMsk", 3}; }
inline ComponentId glib2() { return {"GLib", "glib.so", "IMsk", 2}; }

inline Configuration c_psy2() {
  return Configuration{"psy2",
                       {
                           Component::composite(psy2(), {bin2(), def_psc2(), my_psc2(), julib2()}),
                           Component::composite(bin2(), {psycho2(), mlib2(), glib2()}),
                           Component::leaf(def_psc2(), {"def.psc"}),
                           Component::leaf(my_psc2(), {"my.psc"}, {julib2()}),
                           Component::leaf(julib2(), {"julib.so"}),
                           Component::leaf(psycho2(), {"psycho"}),
                           Component::leaf(mlib2(), {"mlib.so"}),
                           Component::leaf(glib2(), {"glib.so"}),
                       }};
}

// The expected CS_psy2: aci_x = ci2aci(ci_x), PScr entries merged.
inline std::vector<ComponentSpec> cs_psy2_entries() {
  const Interval none = Interval::exactly(0);
  const AbstractComponentId scripts = aci_merge(ci2aci(def_psc2()), ci2aci(my_psc2()));
  return {
      {ci2aci(psy2()),
       {},
       {{ci2aci(bin2()), Interval::exactly(1)},
        {scripts, Interval::exactly(2)},
        {ci2aci(julib2()), Interval::exactly(1)}},
       Interval::exactly(4)},
      {ci2aci(bin2()),
       {},
       {{ci2aci(psycho2()), Interval::exactly(1)},
        {ci2aci(mlib2()), Interval::exactly(1)},
        {ci2aci(glib2()), Interval::exactly(1)}},
       Interval::exactly(3)},
      {scripts, {ci2aci(julib2())}, {}, none},
      {ci2aci(julib2()), {}, {}, none},
      {ci2aci(psycho2()), {}, {}, none},
      {ci2aci(mlib2()), {}, {}, none},
      {ci2aci(glib2()), {}, {}, none},
  };
}

}  // namespace fixtures
