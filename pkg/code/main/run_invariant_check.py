"""
Invariant Check Runner Script
Run this script to check every symbolic operation against the grid oracle
and the decomposition invariants.

Input:
- CHECK_INPUT: downset or module JSON file; when unset, every JSON file in
  data/examples is checked
"""
import os
from pathlib import Path
from dotenv import load_dotenv

from primdecomp import serialization as io
from primdecomp.checker import InvariantChecker
from primdecomp.errors import PrimdecompError

# Load environment variables from .env file
load_dotenv()


def find_inputs(examples_folder):
    """All JSON inputs of the examples folder, skipping bare cone files"""
    examples_path = Path(examples_folder)
    if not examples_path.is_dir():
        raise FileNotFoundError(f"No examples folder at {examples_folder}")
    inputs = [f for f in sorted(examples_path.glob('*.json'))
              if 'pieces' in f.read_text(encoding='utf-8') or 'hull' in f.read_text(encoding='utf-8')]
    if not inputs:
        raise FileNotFoundError(f"No downset or module inputs found in {examples_folder}")
    return inputs


def load_subject(path):
    data = io.load_file(path)
    if isinstance(data, dict) and 'hull' in data:
        return io.parse_module(data)
    return io.parse_downset(data)


def main():
    """Main function to run the invariant checks"""

    print("🔬 Invariant check: symbolic operations against the grid oracle")
    print("-" * 70)

    # Load environment variables
    log_folder = os.getenv('LOG_FOLDER', 'logs')
    output_folder = os.getenv('OUTPUT_FOLDER', 'output')
    plot_folder = os.getenv('PLOT_FOLDER', 'plots')
    check_input = os.getenv('CHECK_INPUT')

    try:
        inputs = [Path(check_input)] if check_input else find_inputs(os.getenv('EXAMPLES_FOLDER', 'data/examples'))
    except FileNotFoundError as e:
        print(f"❌ Error: {str(e)}")
        return

    print(f"📊 Inputs: {', '.join(p.name for p in inputs)}")
    print(f"📁 Log folder: {log_folder}")
    print(f"📁 Output folder: {output_folder}")
    print(f"📁 Plot folder: {plot_folder}")
    print("-" * 70)

    failed = []
    for path in inputs:
        try:
            subject = load_subject(path)
            if isinstance(subject, io.GeneralDownset):
                print(f"⏭️  Skipping {path.name}: cone-int downsets have no symbolic decomposition to check")
                continue
            checker = InvariantChecker(
                subject,
                log_folder=log_folder,
                output_folder=output_folder,
                plot_folder=plot_folder,
                input_name=path.name
            )
            checker.run_complete_check()
        except PrimdecompError as e:
            print(f"❌ Check of {path.name} failed: {str(e)}")
            failed.append(path.name)

    if failed:
        print(f"\n❌ {len(failed)} of {len(inputs)} inputs failed: {', '.join(failed)}")
    else:
        print(f"\n🎉 All {len(inputs)} inputs passed every invariant check!")
    print(f"\n📁 Check the output folders for result tables, heatmaps and logs!")


if __name__ == "__main__":
    main()
