#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mpswap/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace mpswap::cli;

    CLI::App app{"Multi-party adaptor-signature swaps: scenarios, transcripts and demos"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> transcript_out;
    auto* run = app.add_subcommand("run", "Run a scenario from a JSON config");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("-o,--transcript", transcript_out, "Write the transcript here (overrides the config)");

    std::string transcript_path;
    auto* verify = app.add_subcommand("verify", "Re-verify a transcript offline");
    verify->add_option("transcript", transcript_path, "Transcript file")->required();

    std::string script_path;
    std::string acc_profile = "toy";
    auto* acc_demo = app.add_subcommand("acc-demo", "Apply an accumulator op script and print the digest trace");
    acc_demo->add_option("script", script_path, "Op script")->required();
    acc_demo->add_option("-a,--accumulator", acc_profile, "Accumulator profile")->capture_default_str();

    std::string group = "production";
    std::string seed;
    std::string scheme = "schnorr";
    auto* keygen = app.add_subcommand("keygen", "Print a deterministic key pair");
    keygen->add_option("-g,--group", group, "Group profile")->capture_default_str();
    keygen->add_option("-s,--seed", seed, "Seed")->required();
    keygen->add_option("--scheme", scheme, "schnorr or ecdsa")->capture_default_str();

    std::string message = "demo message";
    auto* demo = app.add_subcommand("adaptor-demo", "Pre-sign, adapt and extract with one adaptor scheme");
    demo->add_option("-g,--group", group, "Group profile")->capture_default_str();
    demo->add_option("-s,--seed", seed, "Seed")->required();
    demo->add_option("--scheme", scheme, "schnorr or ecdsa")->capture_default_str();
    demo->add_option("-m,--message", message, "Message to sign")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(config_path, transcript_out, std::cout, std::cerr);
        if (*verify) return cmd_verify(transcript_path, std::cout, std::cerr);
        if (*acc_demo) return cmd_acc_demo(script_path, acc_profile, std::cout, std::cerr);
        if (*keygen) return cmd_keygen(group, seed, scheme, std::cout, std::cerr);
        if (*demo) return cmd_adaptor_demo(group, seed, scheme, message, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
