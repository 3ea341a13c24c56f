from mushy_stefan.cli import main

main()
