from relcat.cli import cli

# Run command-line interface
if __name__ == "__main__":
    cli()
