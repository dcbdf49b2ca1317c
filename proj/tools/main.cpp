#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace cli = pblocks::cli;

int main(int argc, char **argv)
{
    CLI::App app{"Block, 3-block and symmetry decompositions of finite graphs"};
    cli::RunConfig cfg;
    std::string format = "json";
    std::size_t limit = 0;

    app.add_option("command", cfg.command, "blocks|triblocks|planar|faces|autos|quotient|cayley|check")
        ->required()
        ->check(CLI::IsMember(cli::commands()));
    app.add_option("input", cfg.input_path, "edge list or presentation file, '-' for stdin")->required();
    app.add_option("--format", format, "json|dot|text")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_flag("--per-component", cfg.per_component, "decompose each connected component separately");
    app.add_flag("--reduce", cfg.reduce, "suppress degree-2 vertices first");
    auto *limit_opt = app.add_option("--limit", limit, "search bound (overrides PLANAR_BLOCKS_LIMIT)")
                          ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.format = format == "dot" ? cli::Format::Dot : format == "text" ? cli::Format::Text : cli::Format::Json;
    cfg.limit = limit_opt->count() ? std::optional<std::size_t>(limit) : cli::limit_from_env();

    std::string input;
    if (cfg.input_path == "-") {
        input.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(cfg.input_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read " << cfg.input_path << "\n";
            return 1;
        }
        std::ostringstream s;
        s << in.rdbuf();
        input = s.str();
    }

    const auto result = cli::run(cfg, input);
    std::cout << result.output;
    return result.exit_code;
}
