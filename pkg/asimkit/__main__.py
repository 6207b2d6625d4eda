from asimkit.cli import main

main()
