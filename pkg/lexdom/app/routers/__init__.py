# Command modules, registered on the CLI group in main.py
