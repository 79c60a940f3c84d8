"""
Decomposition Runner Script
Run this script to decompose a downset and save the components, the text
panels and the figure into a session folder.

Input:
- DOWNSET_INPUT: downset JSON file (default: data/examples/E1.json)
- PRUNE: set to 1 to drop redundant components
"""
import os
from pathlib import Path
from dotenv import load_dotenv

from primdecomp import serialization as io
from primdecomp.config import session_folders, session_timestamp, setup_logging
from primdecomp.downset import canonical_decomposition, prune_redundant
from primdecomp.render import render_ascii, save_png

# Load environment variables from .env file
load_dotenv()


def main():
    """Main function to run the downset decomposition"""

    print("🧩 Primary decomposition of a downset")
    print("-" * 70)

    # Load environment variables
    log_folder = os.getenv('LOG_FOLDER', 'logs')
    output_folder = os.getenv('OUTPUT_FOLDER', 'output')
    plot_folder = os.getenv('PLOT_FOLDER', 'plots')
    input_path = os.getenv('DOWNSET_INPUT', 'data/examples/E1.json')
    prune = os.getenv('PRUNE', '0') == '1'

    if not Path(input_path).exists():
        print(f"❌ Error: Downset file not found at: {input_path}")
        return

    print(f"📊 Downset: {input_path}")
    print(f"📁 Log folder: {log_folder}")
    print(f"📁 Output folder: {output_folder}")
    print(f"📁 Plot folder: {plot_folder}")
    print("-" * 70)

    try:
        timestamp = session_timestamp()
        session_log, session_output, session_plot = session_folders(
            'decomposition', timestamp, log_folder, output_folder, plot_folder)
        setup_logging(session_log / f"decomposition_log_{timestamp}.log")

        D = io.parse_downset(io.load_file(input_path))
        components = canonical_decomposition(D)
        if prune:
            components = prune_redundant(components, D)

        result_path = session_output / f"decomposition_{timestamp}.json"
        result_path.write_text(io.dumps(io.decomposition_to_json(D, components, pruned=prune)), encoding='utf-8')
        print(f"✅ Components: {', '.join(face.label() for face, _ in components)}")
        print(f"✅ Decomposition saved: {result_path}")

        if D.n == 2:
            text_path = session_output / f"decomposition_{timestamp}.txt"
            text_path.write_text(render_ascii(D, components), encoding='utf-8')
            save_png(D, components, session_plot / f"decomposition_{timestamp}.png")
            print(f"✅ Panels saved: {text_path}")

        print(f"\n🎉 Decomposition completed successfully!")
        print(f"\n📁 Check the output folders for results, plots and logs!")

    except Exception as e:
        print(f"❌ Decomposition failed: {str(e)}")
        return


if __name__ == "__main__":
    main()
