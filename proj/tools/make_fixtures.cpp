// Writes the hand-built fixtures as JSON documents into the given directory.

#include <fstream>
#include <iostream>
#include <string>

#include "normtori/fixtures.hpp"
#include "normtori/serialize.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  auto write = [&](const std::string& name, const normtori::Json& j) {
    std::ofstream f(dir + "/" + name + ".json", std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << dir << "/" << name << ".json\n";
      std::exit(1);
    }
    f << j.dump(2) << "\n";
  };
  namespace fx = normtori::fixtures;
  write("theta", normtori::to_json(normtori::build_standard(2)));
  write("t0", normtori::to_json(fx::t0()));
  write("t1", normtori::to_json(fx::t1()));
  write("t2", normtori::to_json(fx::t2()));
  write("t0-parallel-disk", normtori::to_json(fx::t0_with_parallel_disk()));
  write("parallel-annuli", normtori::to_json(fx::parallel_annuli()));
  write("klein", normtori::to_json(fx::klein()));
  auto flipped = fx::t0();
  for (auto& [pid, p] : flipped.pieces) {
    for (auto& s : p.boundary) s.facing = normtori::flip(s.facing);
    for (auto& [h, side] : p.uncrossed_sides) side = normtori::flip(side);
  }
  write("t0-flipped", normtori::to_json(flipped));
  return 0;
}
