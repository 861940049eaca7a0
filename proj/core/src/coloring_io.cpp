#include "gridramsey/coloring_io.hpp"

#include <fstream>
#include <sstream>

namespace gridramsey {

namespace {

// Strips comment lines and returns the next meaningful line.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

void write_coloring(std::ostream& out, const Coloring& coloring) {
    out << "grid";
    for (const Int& a : coloring.grid().dims()) out << ' ' << a;
    out << "\ncolors " << coloring.colors() << '\n';

    const auto dims = coloring.grid().dims64();
    const std::int64_t row = dims.back();
    const auto& cells = coloring.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (cells[i] + 1);
        out << ((static_cast<std::int64_t>(i) % row == row - 1) ? '\n' : ' ');
    }
}

std::string serialize_coloring(const Coloring& coloring) {
    std::ostringstream out;
    write_coloring(out, coloring);
    return out.str();
}

Coloring parse_coloring(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw std::invalid_argument("coloring: missing grid header");
    std::istringstream grid_line(line);
    std::string keyword;
    grid_line >> keyword;
    if (keyword != "grid") throw std::invalid_argument("coloring: expected 'grid' header");
    std::vector<Int> dims;
    std::string token;
    while (grid_line >> token) dims.emplace_back(token);
    if (dims.empty()) throw std::invalid_argument("coloring: grid header has no sides");

    if (!next_content_line(in, line)) throw std::invalid_argument("coloring: missing colors header");
    std::istringstream colors_line(line);
    colors_line >> keyword;
    std::int64_t colors = 0;
    if (keyword != "colors" || !(colors_line >> colors) || colors < 1)
        throw std::invalid_argument("coloring: expected 'colors <c>' header");

    Grid grid(std::move(dims));
    const Int vol = grid.volume();
    if (vol > Coloring::kMaxCells) throw std::invalid_argument("coloring: grid too large");
    const std::size_t expected = static_cast<std::size_t>(vol);

    std::vector<Coloring::Color> cells;
    cells.reserve(expected);
    while (next_content_line(in, line)) {
        std::istringstream cell_line(line);
        std::int64_t value = 0;
        while (cell_line >> value) {
            if (value < 1 || value > colors)
                throw std::invalid_argument("coloring: cell color out of range [1.." +
                                            std::to_string(colors) + "]");
            cells.push_back(static_cast<Coloring::Color>(value - 1));
        }
        if (!cell_line.eof())
            throw std::invalid_argument("coloring: non-numeric cell value");
    }
    if (cells.size() != expected)
        throw std::invalid_argument("coloring: expected " + std::to_string(expected) +
                                    " cells, found " + std::to_string(cells.size()));
    return Coloring(std::move(grid), colors, std::move(cells));
}

Coloring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    return parse_coloring(in);
}

Coloring load_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coloring file: " + path);
    return parse_coloring(in);
}

void save_coloring_file(const std::string& path, const Coloring& coloring) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write coloring file: " + path);
    write_coloring(out, coloring);
}

}  // namespace gridramsey
