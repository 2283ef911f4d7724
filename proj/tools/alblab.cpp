#include "cli.hpp"

#include <iostream>
#include <iterator>
#include <thread>

int main(int argc, char **argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);

	// batch mode: alblab [--workers n] --json-in -
	int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
	for (std::size_t i = 0; i + 1 < args.size(); ++i) {
		if (args[i] == "--workers") {
			workers = std::stoi(args[i + 1]);
			args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
			break;
		}
	}
	alblab::cli::Outcome out;
	if (args.size() == 2 && args[0] == "--json-in") {
		std::string text;
		if (args[1] == "-") {
			text.assign(std::istreambuf_iterator<char>(std::cin), {});
		} else {
			std::cerr << "--json-in only reads standard input ('-')\n";
			return alblab::cli::exit_usage;
		}
		out = alblab::cli::run_batch(text, std::nullopt, workers);
	} else {
		out = alblab::cli::run(args);
	}
	if (!out.help.empty()) {
		std::cout << out.help;
		return 0;
	}
	std::cout << out.output.dump() << '\n';
	if (out.exit_code != 0 && out.output.contains("error"))
		std::cerr << "alblab: " << out.output["error"].get<std::string>() << '\n';
	return out.exit_code;
}
