// Regenerates the shipped fixture files. Run with the target directory
// as the only argument; the unit tests compare the shipped files
// against these builders, so edits belong here, not in the JSON.

#include "polysum/fixtures.hpp"
#include "polysum/json_io.hpp"

#include <iostream>

using namespace polysum;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: polysum-fixtures <directory>\n";
        return 2;
    }
    std::string dir = argv[1];
    auto emit = [&](const std::string& name, const Json& j) {
        write_text_file(dir + "/" + name, j.dump(2) + "\n");
        std::cout << "wrote " << dir << "/" << name << "\n";
    };

    emit("fix1.json", to_json(fixtures::fix1()));
    auto [p, q] = fixtures::fix1_inputs();
    emit("fix1_p.json", to_json(p));
    emit("fix1_q.json", to_json(q));

    emit("fix_cube2.json", to_json(fixtures::fix_cube(2)));
    emit("fix_cube3.json", to_json(fixtures::fix_cube(3)));

    emit("fix_pyr4.json", to_json(fixtures::fix_pyramid(4)));
    emit("fix_pyr8.json", to_json(fixtures::fix_pyramid(8)));
    emit("fix_pyr4_slice.json", to_json(fixtures::fix_pyramid_slice(4)));
    emit("fix_pyr8_slice.json", to_json(fixtures::fix_pyramid_slice(8)));

    auto [left, right] = fixtures::fix_g1g2();
    emit("fix_g1g2.json", Json{{"name", "fix_g1g2"},
                               {"left", to_json(left)},
                               {"right", to_json(right)},
                               {"glued", to_json(fixtures::fix_g1g2_expected())}});

    emit("fix3.json", to_json(fixtures::fix3()));
    return 0;
}
